#include "godan/packing.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "godan/rng.hpp"

namespace godan {

namespace {

// Dynamic bitset over compact vertex ids.
struct Bits {
    std::vector<uint64_t> w;

    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(int i) { w[static_cast<size_t>(i) >> 6] |= 1ull << (i & 63); }
    void clear(int i) { w[static_cast<size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
    bool test(int i) const { return (w[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1ull; }
    bool operator==(const Bits&) const = default;
};

struct BitsKey {
    std::vector<uint64_t> w;
    int trees_left;
    bool operator==(const BitsKey&) const = default;
};

struct BitsKeyHash {
    size_t operator()(const BitsKey& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(k.trees_left + 7);
        for (uint64_t word : k.w) {
            h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<size_t>(h);
    }
};

// The compacted packing problem: the view's vertices remapped to 0..V-1, with
// every terminal-terminal edge subdivided by a dummy vertex so that edge
// disjointness reduces to vertex disjointness outside S.
struct Problem {
    std::vector<Vtx> orig;                 // compact id -> original id (dummies: kNoVtx)
    std::vector<std::pair<Vtx, Vtx>> dummy_ends;  // per dummy, the original endpoints
    std::vector<std::vector<int>> adj;     // compact adjacency, sorted
    std::vector<int> terminals;            // compact ids
    std::vector<uint8_t> is_terminal;
    int v_count = 0;

    int compact_of(Vtx v) const {
        const auto end = orig.begin() + real_count;
        const auto it = std::lower_bound(orig.begin(), end, v);
        if (it == end || *it != v) return -1;
        return static_cast<int>(it - orig.begin());
    }
    int real_count = 0;
};

Problem build_problem(const SubgraphView& view, const std::vector<Vtx>& S) {
    Problem p;
    p.orig = view.vertices();  // ascending original ids -> compact order is id order
    p.real_count = static_cast<int>(p.orig.size());
    p.v_count = p.real_count;
    p.adj.resize(p.orig.size());
    p.is_terminal.assign(p.orig.size(), 0);

    for (Vtx t : S) {
        const int c = p.compact_of(t);
        if (c < 0) throw std::invalid_argument("packing: terminal not in view");
        if (!p.is_terminal[static_cast<size_t>(c)]) {
            p.is_terminal[static_cast<size_t>(c)] = 1;
            p.terminals.push_back(c);
        }
    }
    std::sort(p.terminals.begin(), p.terminals.end());

    for (int c = 0; c < p.real_count; ++c) {
        const Vtx v = p.orig[static_cast<size_t>(c)];
        view.for_each_neighbor(v, [&](Vtx u) {
            const int cu = p.compact_of(u);
            if (cu < 0 || cu == c) return;
            if (p.is_terminal[static_cast<size_t>(c)] && p.is_terminal[static_cast<size_t>(cu)]) {
                if (c < cu) {
                    // subdivide the terminal-terminal edge
                    const int d = p.v_count++;
                    p.orig.push_back(kNoVtx);
                    p.dummy_ends.emplace_back(v, u);
                    p.adj.push_back({c, cu});
                    p.adj[static_cast<size_t>(c)].push_back(d);
                    p.adj[static_cast<size_t>(cu)].push_back(d);
                    p.is_terminal.push_back(0);
                }
            } else {
                p.adj[static_cast<size_t>(c)].push_back(cu);
            }
        });
    }
    for (auto& row : p.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return p;
}

// Exact tree-by-tree connector search. Each connector is a vertex set A with
// S u A connected in the induced graph. Tree order is not constrained: the
// failed-state memo (available-set x trees-left) absorbs permuted orderings,
// and leaving the order free keeps the guided growth effective.
class Packer {
public:
    Packer(const Problem& p, const PackOptions& opts) : p_(p), opts_(opts) {
        adj_ = p.adj;
        root_ = p_.terminals.empty() ? 0 : p_.terminals[0];
    }

    uint64_t explored = 0;
    bool budget_exhausted = false;

    // One complete search attempt. The order seed permutes adjacency rows and
    // rotates the component root, diversifying the greedy trajectory without
    // touching the search space; any clean failure refutes exactly.
    std::optional<std::vector<std::vector<int>>> pack(int t, uint64_t attempt, uint64_t node_cap) {
        if (t == 0) return std::vector<std::vector<int>>{};
        budget_exhausted = false;
        node_cap_ = node_cap;
        adj_ = p_.adj;
        if (attempt > 0) {
            Rng rng(0x5eed0000 + attempt);
            for (auto& row : adj_) {
                for (size_t i = row.size(); i > 1; --i)
                    std::swap(row[i - 1], row[rng.below(i)]);
            }
        }
        root_ = p_.terminals[attempt % p_.terminals.size()];
        avail_ = Bits(static_cast<size_t>(p_.v_count));
        for (int v = 0; v < p_.v_count; ++v)
            if (!p_.is_terminal[static_cast<size_t>(v)]) avail_.set(v);
        connectors_.assign(static_cast<size_t>(t), {});
        target_ = t;
        if (search_tree(0)) return connectors_;
        return std::nullopt;
    }

private:
    const Problem& p_;
    const PackOptions& opts_;
    std::vector<std::vector<int>> adj_;  // possibly permuted rows
    int root_ = 0;
    Bits avail_;
    int target_ = 0;
    uint64_t node_cap_ = 0;
    std::vector<std::vector<int>> connectors_;
    std::unordered_set<BitsKey, BitsKeyHash> failed_;

    bool over_budget() {
        if (explored > node_cap_) {
            budget_exhausted = true;
            return true;
        }
        return false;
    }

    // Every remaining tree needs one fresh non-terminal neighbor per terminal.
    bool degree_prune_ok(int trees_left) const {
        for (int t : p_.terminals) {
            int free_nbrs = 0;
            for (int u : p_.adj[static_cast<size_t>(t)])
                if (avail_.test(u)) ++free_nbrs;
            if (free_nbrs < trees_left) return false;
        }
        return true;
    }

    // Each remaining tree routes every terminal pair through its own
    // connector, so each pair needs trees_left vertex-disjoint paths through
    // the still-free vertices (avail minus the current partial connector).
    // Exact unit-capacity max-flow on the split digraph; an under-count here
    // would prune valid branches.
    bool flow_prune_ok(int trees_left, const Bits* minus = nullptr) {
        struct Arc {
            int to, next, cap;
        };
        const int n = p_.v_count;
        std::vector<int> head(2 * static_cast<size_t>(n), -1);
        std::vector<Arc> arcs;
        auto add = [&](int from, int to, int cap) {
            arcs.push_back({to, head[static_cast<size_t>(from)], cap});
            head[static_cast<size_t>(from)] = static_cast<int>(arcs.size() - 1);
            arcs.push_back({from, head[static_cast<size_t>(to)], 0});
            head[static_cast<size_t>(to)] = static_cast<int>(arcs.size() - 1);
        };
        auto in_node = [](int v) { return 2 * v; };
        auto out_node = [](int v) { return 2 * v + 1; };
        auto usable = [&](int v) {
            if (p_.is_terminal[static_cast<size_t>(v)]) return true;
            if (!avail_.test(v)) return false;
            return minus == nullptr || !minus->test(v);
        };

        for (int v = 0; v < n; ++v) {
            if (!usable(v)) continue;
            const bool term = p_.is_terminal[static_cast<size_t>(v)] != 0;
            add(in_node(v), out_node(v), term ? trees_left : 1);
            for (int u : p_.adj[static_cast<size_t>(v)]) {
                if (!usable(u)) continue;
                add(out_node(v), in_node(u), trees_left);
            }
        }
        const auto base_arcs = arcs;

        for (size_t a = 0; a < p_.terminals.size(); ++a) {
            for (size_t b = a + 1; b < p_.terminals.size(); ++b) {
                arcs = base_arcs;
                const int src = out_node(p_.terminals[a]);
                const int dst = in_node(p_.terminals[b]);
                int units = 0;
                while (units < trees_left) {
                    std::vector<int> prev(2 * static_cast<size_t>(n), -1);
                    std::vector<uint8_t> seen(2 * static_cast<size_t>(n), 0);
                    std::vector<int> queue = {src};
                    seen[static_cast<size_t>(src)] = 1;
                    bool reached = false;
                    for (size_t h = 0; h < queue.size() && !reached; ++h) {
                        const int v = queue[h];
                        for (int e = head[static_cast<size_t>(v)]; e >= 0;
                             e = arcs[static_cast<size_t>(e)].next) {
                            const Arc& arc = arcs[static_cast<size_t>(e)];
                            if (arc.cap <= 0 || seen[static_cast<size_t>(arc.to)]) continue;
                            seen[static_cast<size_t>(arc.to)] = 1;
                            prev[static_cast<size_t>(arc.to)] = e;
                            if (arc.to == dst) {
                                reached = true;
                                break;
                            }
                            queue.push_back(arc.to);
                        }
                    }
                    if (!reached) break;
                    for (int node = dst; node != src;) {
                        const int e = prev[static_cast<size_t>(node)];
                        arcs[static_cast<size_t>(e)].cap -= 1;
                        arcs[static_cast<size_t>(e ^ 1)].cap += 1;
                        node = arcs[static_cast<size_t>(e ^ 1)].to;
                    }
                    ++units;
                }
                if (units < trees_left) return false;
            }
        }
        return true;
    }

    bool search_tree(int tree_idx) {
        if (tree_idx == target_) return true;
        if (over_budget()) return false;
        ++explored;
        const int trees_left = target_ - tree_idx;
        if (!degree_prune_ok(trees_left)) return false;

        BitsKey key{avail_.w, trees_left};
        if (failed_.count(key)) return false;
        if (!opts_.debug_no_flow_prune && trees_left >= 2 && !flow_prune_ok(trees_left)) {
            failed_.insert(std::move(key));
            return false;
        }

        Bits in(static_cast<size_t>(p_.v_count));
        Bits excl(static_cast<size_t>(p_.v_count));
        std::vector<int> in_list;
        if (grow_connector(tree_idx, in, excl, in_list)) return true;
        if (!budget_exhausted) failed_.insert(std::move(key));
        return false;
    }

    // Include/exclude branching guided by a shortest augmenting path from the
    // first terminal's component. Complete: both branches always explored.
    bool grow_connector(int tree_idx, Bits& in, Bits& excl, std::vector<int>& in_list) {
        if (over_budget()) return false;
        ++explored;

        // Component of the root terminal within S u In.
        std::vector<int> comp_stack = {root_};
        Bits comp(static_cast<size_t>(p_.v_count));
        comp.set(root_);
        size_t reached_terminals = 1;
        while (!comp_stack.empty()) {
            const int v = comp_stack.back();
            comp_stack.pop_back();
            for (int u : adj_[static_cast<size_t>(v)]) {
                if (comp.test(u)) continue;
                if (!(p_.is_terminal[static_cast<size_t>(u)] || in.test(u))) continue;
                comp.set(u);
                if (p_.is_terminal[static_cast<size_t>(u)]) ++reached_terminals;
                comp_stack.push_back(u);
            }
        }
        if (reached_terminals == p_.terminals.size()) {
            // Connector complete; recurse into the next tree.
            connectors_[static_cast<size_t>(tree_idx)] = in_list;
            for (int v : in_list) avail_.clear(v);
            const bool ok = search_tree(tree_idx + 1);
            for (int v : in_list) avail_.set(v);
            if (ok) return true;
            // fall through: alternative connectors may still work
            if (budget_exhausted) return false;
        }

        // Shortest path from the component toward any unreached terminal,
        // through still-available vertices.
        std::vector<int> parent(static_cast<size_t>(p_.v_count), -2);
        std::vector<int> queue;
        for (int v = 0; v < p_.v_count; ++v)
            if (comp.test(v)) {
                parent[static_cast<size_t>(v)] = -1;
                queue.push_back(v);
            }
        int hit = -1;
        for (size_t h = 0; h < queue.size() && hit < 0; ++h) {
            const int v = queue[h];
            for (int u : adj_[static_cast<size_t>(v)]) {
                if (parent[static_cast<size_t>(u)] != -2) continue;
                if (p_.is_terminal[static_cast<size_t>(u)]) {
                    // unreached terminal (reached ones are inside comp)
                    parent[static_cast<size_t>(u)] = v;
                    hit = u;
                    break;
                }
                if (!avail_.test(u) || in.test(u) || excl.test(u)) continue;
                parent[static_cast<size_t>(u)] = v;
                queue.push_back(u);
            }
        }
        if (hit < 0) return false;  // this tree can no longer connect S

        // First non-seed vertex of the augmenting path. A terminal adjacent to
        // the component would already be inside it, so this is a free vertex.
        int step = hit;
        while (parent[static_cast<size_t>(step)] >= 0 &&
               parent[static_cast<size_t>(parent[static_cast<size_t>(step)])] != -1)
            step = parent[static_cast<size_t>(step)];
        if (p_.is_terminal[static_cast<size_t>(step)])
            throw std::logic_error("packer: augmenting path of length zero");
        const int v = step;

        // include-first, unless taking v starves the remaining trees
        in.set(v);
        in_list.push_back(v);
        const int after = target_ - tree_idx - 1;
        if (after < 1 || opts_.debug_no_flow_prune || flow_prune_ok(after, &in)) {
            if (grow_connector(tree_idx, in, excl, in_list)) return true;
        }
        in_list.pop_back();
        in.clear(v);
        if (budget_exhausted) return false;

        excl.set(v);
        const bool ok = grow_connector(tree_idx, in, excl, in_list);
        excl.clear(v);
        return ok;
    }
};

// Spanning tree of S u A inside the problem graph, mapped back to original
// vertices with dummies re-expanded into terminal-terminal edges.
EdgeList realize_tree(const Problem& p, const std::vector<int>& connector,
                      const std::vector<Vtx>& S_orig) {
    Bits allowed(static_cast<size_t>(p.v_count));
    for (int t : p.terminals) allowed.set(t);
    for (int v : connector) allowed.set(v);

    std::vector<int> parent(static_cast<size_t>(p.v_count), -2);
    std::vector<int> queue = {p.terminals[0]};
    parent[static_cast<size_t>(p.terminals[0])] = -1;
    for (size_t h = 0; h < queue.size(); ++h) {
        const int v = queue[h];
        for (int u : p.adj[static_cast<size_t>(v)]) {
            if (parent[static_cast<size_t>(u)] != -2 || !allowed.test(u)) continue;
            parent[static_cast<size_t>(u)] = v;
            queue.push_back(u);
        }
    }
    // Compact spanning edges -> original edges. A dummy of tree-degree 2 is a
    // crossing of a subdivided terminal-terminal edge; degree 1 is a dangling
    // leaf and drops out.
    EdgeList out;
    for (int v = 0; v < p.v_count; ++v) {
        const int par = parent[static_cast<size_t>(v)];
        if (par < 0) continue;
        if (p.orig[static_cast<size_t>(v)] == kNoVtx || p.orig[static_cast<size_t>(par)] == kNoVtx)
            continue;
        add_edge(out, p.orig[static_cast<size_t>(v)], p.orig[static_cast<size_t>(par)]);
    }
    for (int v = p.real_count; v < p.v_count; ++v) {
        if (parent[static_cast<size_t>(v)] == -2) continue;  // unreached dummy
        int deg = (parent[static_cast<size_t>(v)] >= 0) ? 1 : 0;
        for (int u = 0; u < p.v_count; ++u)
            if (parent[static_cast<size_t>(u)] == v) ++deg;
        if (deg >= 2) {
            const auto& ends = p.dummy_ends[static_cast<size_t>(v - p.real_count)];
            add_edge(out, ends.first, ends.second);
        }
    }
    normalize(out);
    return prune_to_steiner_tree(out, S_orig);
}

}  // namespace

std::optional<std::vector<EdgeList>> pack_idst(const SubgraphView& view, const std::vector<Vtx>& S,
                                               int t, const PackOptions& opts, uint64_t* explored,
                                               bool* exhausted_budget) {
    if (static_cast<int>(view.present_count()) > opts.max_view_size)
        throw std::invalid_argument("packing: view exceeds configured bound");
    if (S.size() < 2) throw std::invalid_argument("packing needs at least two terminals");
    const Problem p = build_problem(view, S);
    Packer packer(p, opts);
    // Deterministic restart schedule: each attempt reorders the greedy
    // trajectory; a clean (non-budget) failure from any attempt is exact.
    const uint64_t slice = std::max<uint64_t>(opts.node_budget / 16, 1000);
    std::optional<std::vector<std::vector<int>>> res;
    bool exhausted = false;
    for (uint64_t attempt = 0; packer.explored <= opts.node_budget; ++attempt) {
        const uint64_t cap = (attempt < 8) ? std::min(packer.explored + slice, opts.node_budget)
                                           : opts.node_budget;
        res = packer.pack(t, attempt, cap);
        if (res) {
            exhausted = false;
            break;
        }
        if (!packer.budget_exhausted) {
            exhausted = false;  // exact refutation
            break;
        }
        exhausted = true;
        if (cap >= opts.node_budget) break;
    }
    if (explored) *explored = packer.explored;
    if (exhausted_budget) *exhausted_budget = exhausted;
    if (!res) return std::nullopt;
    std::vector<EdgeList> trees;
    trees.reserve(res->size());
    std::vector<Vtx> S_sorted(S.begin(), S.end());
    std::sort(S_sorted.begin(), S_sorted.end());
    for (const auto& connector : *res) trees.push_back(realize_tree(p, connector, S_sorted));
    return trees;
}

PackingResult kappa_S_exact(const SubgraphView& view, const std::vector<Vtx>& S, int warm_start,
                            const PackOptions& opts) {
    PackingResult result;
    result.S = S;
    result.status = PackStatus::Exact;

    if (S.size() < 2) throw std::invalid_argument("kappa_S_exact needs at least two terminals");
    // Degree upper bound: every tree uses a distinct neighbor of each terminal.
    int ub = std::numeric_limits<int>::max();
    for (Vtx t : S) {
        int d = 0;
        view.for_each_neighbor(t, [&](Vtx) { ++d; });
        ub = std::min(ub, d);
    }

    int t = std::clamp(warm_start, 1, std::max(1, ub));
    int best = 0;
    bool exhausted_any = false;
    std::vector<EdgeList> best_witness;

    // establish a first feasible t
    while (t >= 1) {
        uint64_t nodes = 0;
        bool exhausted = false;
        auto r = pack_idst(view, S, t, opts, &nodes, &exhausted);
        result.explored += nodes;
        exhausted_any |= exhausted;
        if (r) {
            best = t;
            best_witness = std::move(*r);
            break;
        }
        if (exhausted) {
            result.status = PackStatus::LowerBound;
            --t;
            continue;
        }
        --t;
    }
    // climb upward while feasible
    while (best > 0 && best < ub) {
        uint64_t nodes = 0;
        bool exhausted = false;
        auto r = pack_idst(view, S, best + 1, opts, &nodes, &exhausted);
        result.explored += nodes;
        if (r) {
            best = best + 1;
            best_witness = std::move(*r);
            continue;
        }
        if (exhausted) {
            exhausted_any = true;
            result.status = PackStatus::LowerBound;
        }
        break;
    }
    result.max_t = best;
    (void)exhausted_any;
    if (!best_witness.empty()) result.witness_stack.push_back(std::move(best_witness));
    return result;
}

KappaKResult kappa_k_exact(const CayleyGraph& g, int k, const KappaKPolicy& policy,
                           const PackOptions& opts) {
    KappaKResult out;
    out.seed = policy.seed;
    const Vtx V = g.vertex_count();
    if (policy.exhaustive && V > 24)
        throw std::invalid_argument("kappa_k_exact: exhaustive policy limited to |V| <= 24");

    const SubgraphView view = full_view(g);
    int best = std::numeric_limits<int>::max();
    std::vector<Vtx> best_S;
    bool exact = true;

    auto consider = [&](const std::vector<Vtx>& S) {
        ++out.subsets;
        if (best != std::numeric_limits<int>::max()) {
            // Only interesting when it drops below the current minimum.
            uint64_t nodes = 0;
            bool exhausted = false;
            auto r = pack_idst(view, S, best, opts, &nodes, &exhausted);
            if (exhausted) exact = false;
            if (r) return;
        }
        auto full = kappa_S_exact(view, S, best == std::numeric_limits<int>::max() ? g.n() : best,
                                  opts);
        if (full.status == PackStatus::LowerBound) {
            // Unresolved refutation: its max_t is only a lower bound, so it
            // cannot certify a smaller minimum.
            exact = false;
            return;
        }
        if (full.max_t < best) {
            best = full.max_t;
            best_S = S;
        }
    };

    if (policy.exhaustive) {
        std::vector<Vtx> S(static_cast<size_t>(k));
        std::vector<int> idx(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            for (int i = 0; i < k; ++i) S[static_cast<size_t>(i)] = static_cast<Vtx>(idx[static_cast<size_t>(i)]);
            consider(S);
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == static_cast<int>(V) - k + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
            for (int i = pos + 1; i < k; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
        }
    } else {
        Rng rng(policy.seed);
        for (int s = 0; s < policy.samples; ++s) {
            const auto ids = rng.sample_distinct(V, static_cast<size_t>(k));
            std::vector<Vtx> S;
            for (uint64_t id : ids) S.push_back(static_cast<Vtx>(id));
            consider(S);
        }
        exact = false;  // sampling certifies only an upper bound
    }
    if (best == std::numeric_limits<int>::max()) {
        // Nothing resolved exactly within budget; no certified value.
        out.value = 0;
        out.exact = false;
        return out;
    }
    out.value = best;
    out.exact = exact && policy.exhaustive;
    out.min_S = best_S;
    return out;
}

std::optional<int> upper_bound_min_degree_rule(const SubgraphView& view, int k) {
    const auto vs = view.vertices();
    if (k < 3 || static_cast<size_t>(k) > vs.size())
        throw std::invalid_argument("upper_bound_min_degree_rule: k out of range");
    std::vector<int> deg(view.base().vertex_count(), 0);
    int delta = std::numeric_limits<int>::max();
    for (Vtx v : vs) {
        int d = 0;
        view.for_each_neighbor(v, [&](Vtx) { ++d; });
        deg[v] = d;
        delta = std::min(delta, d);
    }
    for (Vtx v : vs) {
        if (deg[v] != delta) continue;
        bool found = false;
        view.for_each_neighbor(v, [&](Vtx u) {
            if (deg[u] == delta) found = true;
        });
        if (found) return delta - 1;
    }
    return std::nullopt;
}

int whitney_kappa(const SubgraphView& view) {
    const auto vs = view.vertices();
    if (vs.size() < 2) throw std::invalid_argument("whitney_kappa needs at least two vertices");
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = i + 1; j < vs.size(); ++j) {
            const auto fam =
                internally_disjoint_paths(view, vs[i], vs[j], static_cast<int>(vs.size()));
            best = std::min(best, static_cast<int>(fam.paths.size()));
        }
    }
    return best;
}

}  // namespace godan
