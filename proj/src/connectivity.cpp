#include "godan/connectivity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace godan {

namespace {

// Unit-capacity max-flow on the split-vertex digraph (the standard Menger
// reduction). Node 2v = v_in, 2v+1 = v_out; then source, sink.
class VertexFlow {
public:
    explicit VertexFlow(const SubgraphView& view) : view_(view) {
        const Vtx n = view.base().vertex_count();
        node_count_ = 2 * n + 2;
        source_ = 2 * n;
        sink_ = 2 * n + 1;
        head_.assign(node_count_, -1);
    }

    int source() const { return source_; }
    int sink() const { return sink_; }
    static int in_node(Vtx v) { return static_cast<int>(2 * v); }
    static int out_node(Vtx v) { return static_cast<int>(2 * v + 1); }

    void add_arc(int from, int to, int cap) {
        arcs_.push_back({to, next_of(from), cap});
        head_[static_cast<size_t>(from)] = static_cast<int>(arcs_.size() - 1);
        arcs_.push_back({from, next_of(to), 0});
        head_[static_cast<size_t>(to)] = static_cast<int>(arcs_.size() - 1);
    }

    // Splits every vertex for which keep returns true.
    template <typename Keep>
    void add_splits(Keep&& keep) {
        for (Vtx v = 0; v < view_.base().vertex_count(); ++v)
            if (view_.contains(v) && keep(v)) add_arc(in_node(v), out_node(v), 1);
    }

    // Adds u_out -> v_in for every in-view edge endpoint pair allowed by the
    // filter. Edge arcs carry effectively unlimited capacity so that minimum
    // cuts consist of split (vertex) arcs only; throughput is bounded by the
    // endpoint splits.
    template <typename Allow>
    void add_edge_arcs(Allow&& allow) {
        for (Vtx v = 0; v < view_.base().vertex_count(); ++v) {
            if (!view_.contains(v)) continue;
            view_.for_each_neighbor(v, [&](Vtx u) {
                if (allow(v, u)) add_arc(out_node(v), in_node(u), kBigCap);
            });
        }
    }

    static constexpr int kBigCap = 1 << 28;

    // BFS augmentation until max_units reached or no augmenting path remains.
    int run(int max_units) {
        int flow = 0;
        while (flow < max_units && augment()) ++flow;
        return flow;
    }

    // Residual-reachability from the source (after run).
    std::vector<uint8_t> residual_reachable() const {
        std::vector<uint8_t> seen(node_count_, 0);
        std::vector<int> queue = {source_};
        seen[static_cast<size_t>(source_)] = 1;
        for (size_t h = 0; h < queue.size(); ++h) {
            const int v = queue[h];
            for (int a = head_[static_cast<size_t>(v)]; a >= 0; a = arcs_[static_cast<size_t>(a)].next) {
                const Arc& arc = arcs_[static_cast<size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<size_t>(arc.to)]) {
                    seen[static_cast<size_t>(arc.to)] = 1;
                    queue.push_back(arc.to);
                }
            }
        }
        return seen;
    }

    // Decomposes the flow into paths of original vertices. Walks start at the
    // source; unit vertex capacities keep every walk simple. Source and sink
    // arcs may carry several units.
    std::vector<std::vector<Vtx>> extract_paths() {
        std::vector<std::vector<Vtx>> paths;
        for (int a = head_[static_cast<size_t>(source_)]; a >= 0; a = arcs_[static_cast<size_t>(a)].next) {
            if ((a & 1) != 0) continue;
            while (used_[static_cast<size_t>(a / 2)] > 0) {
                used_[static_cast<size_t>(a / 2)] -= 1;
                std::vector<Vtx> path;
                int node = arcs_[static_cast<size_t>(a)].to;
                while (node != sink_) {
                    if (node % 2 == 0 && node < source_) path.push_back(static_cast<Vtx>(node / 2));
                    int chosen = -1;
                    for (int b = head_[static_cast<size_t>(node)]; b >= 0;
                         b = arcs_[static_cast<size_t>(b)].next) {
                        if ((b & 1) != 0) continue;  // skip residual arcs
                        if (used_[static_cast<size_t>(b / 2)] > 0) {
                            chosen = b;
                            break;
                        }
                    }
                    if (chosen < 0) throw std::logic_error("flow decomposition lost a unit");
                    used_[static_cast<size_t>(chosen / 2)] -= 1;
                    node = arcs_[static_cast<size_t>(chosen)].to;
                }
                paths.push_back(std::move(path));
            }
        }
        return paths;
    }

    void finalize_flow() {
        // used_[i] = units on forward arc 2i (its reverse arc's residual cap).
        used_.assign(arcs_.size() / 2, 0);
        for (size_t i = 0; i + 1 < arcs_.size(); i += 2)
            used_[i / 2] = arcs_[i + 1].cap;
    }

private:
    struct Arc {
        int to;
        int next;
        int cap;
    };

    int next_of(int node) const { return head_[static_cast<size_t>(node)]; }

    bool augment() {
        std::vector<int> prev_arc(node_count_, -1);
        std::vector<uint8_t> seen(node_count_, 0);
        std::vector<int> queue = {source_};
        seen[static_cast<size_t>(source_)] = 1;
        for (size_t h = 0; h < queue.size() && !seen[static_cast<size_t>(sink_)]; ++h) {
            const int v = queue[h];
            for (int a = head_[static_cast<size_t>(v)]; a >= 0; a = arcs_[static_cast<size_t>(a)].next) {
                const Arc& arc = arcs_[static_cast<size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<size_t>(arc.to)]) {
                    seen[static_cast<size_t>(arc.to)] = 1;
                    prev_arc[static_cast<size_t>(arc.to)] = a;
                    queue.push_back(arc.to);
                    if (arc.to == sink_) break;
                }
            }
        }
        if (!seen[static_cast<size_t>(sink_)]) return false;
        for (int node = sink_; node != source_;) {
            const int a = prev_arc[static_cast<size_t>(node)];
            arcs_[static_cast<size_t>(a)].cap -= 1;
            arcs_[static_cast<size_t>(a ^ 1)].cap += 1;
            node = arcs_[static_cast<size_t>(a ^ 1)].to;
        }
        return true;
    }

    const SubgraphView& view_;
    int node_count_;
    int source_, sink_;
    std::vector<int> head_;
    std::vector<Arc> arcs_;
    std::vector<int> used_;
};

bool contains_vtx(const std::vector<Vtx>& vs, Vtx v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

}  // namespace

PathFamily internally_disjoint_paths(const SubgraphView& view, Vtx x, Vtx y, int k) {
    if (x == y) throw std::invalid_argument("internally_disjoint_paths: endpoints must differ");
    if (!view.contains(x) || !view.contains(y))
        throw std::invalid_argument("internally_disjoint_paths: endpoint not in view");
    VertexFlow net(view);
    net.add_splits([&](Vtx v) { return v != x && v != y; });
    // The direct edge, when present, is exactly one path.
    net.add_edge_arcs([&](Vtx a, Vtx b) { return !(a == x && b == y); });
    if (view.base().adjacent(x, y))
        net.add_arc(VertexFlow::out_node(x), VertexFlow::in_node(y), 1);
    net.add_arc(net.source(), VertexFlow::out_node(x), k);
    net.add_arc(VertexFlow::in_node(y), net.sink(), k);
    const int got = net.run(k);

    PathFamily fam;
    fam.kind = FamilyKind::InternallyDisjoint;
    net.finalize_flow();
    for (auto& p : net.extract_paths()) {
        std::vector<Vtx> full = {x};  // extracted walk already ends at y
        full.insert(full.end(), p.begin(), p.end());
        fam.paths.push_back(std::move(full));
    }
    if (got < k && !view.base().adjacent(x, y)) {
        // Certify with the min cut (only defined for non-adjacent endpoints).
        VertexFlow cutnet(view);
        cutnet.add_splits([&](Vtx v) { return v != x && v != y; });
        cutnet.add_edge_arcs([&](Vtx, Vtx) { return true; });
        cutnet.add_arc(cutnet.source(), VertexFlow::out_node(x), std::numeric_limits<int>::max() / 2);
        cutnet.add_arc(VertexFlow::in_node(y), cutnet.sink(), std::numeric_limits<int>::max() / 2);
        cutnet.run(std::numeric_limits<int>::max() / 2);
        const auto seen = cutnet.residual_reachable();
        for (Vtx v = 0; v < view.base().vertex_count(); ++v) {
            if (!view.contains(v) || v == x || v == y) continue;
            if (seen[static_cast<size_t>(VertexFlow::in_node(v))] &&
                !seen[static_cast<size_t>(VertexFlow::out_node(v))])
                fam.cut.push_back(v);
        }
    }
    return fam;
}

std::vector<Vtx> min_vertex_cut(const SubgraphView& view, Vtx x, Vtx y) {
    if (x == y) throw std::invalid_argument("min_vertex_cut: endpoints must differ");
    if (view.base().adjacent(x, y))
        throw std::invalid_argument("min_vertex_cut: not defined for adjacent vertices");
    if (!view.contains(x) || !view.contains(y))
        throw std::invalid_argument("min_vertex_cut: endpoint not in view");
    VertexFlow net(view);
    net.add_splits([&](Vtx v) { return v != x && v != y; });
    net.add_edge_arcs([&](Vtx, Vtx) { return true; });
    const int big = std::numeric_limits<int>::max() / 2;
    net.add_arc(net.source(), VertexFlow::out_node(x), big);
    net.add_arc(VertexFlow::in_node(y), net.sink(), big);
    net.run(big);
    const auto seen = net.residual_reachable();
    std::vector<Vtx> cut;
    for (Vtx v = 0; v < view.base().vertex_count(); ++v) {
        if (!view.contains(v) || v == x || v == y) continue;
        if (seen[static_cast<size_t>(VertexFlow::in_node(v))] &&
            !seen[static_cast<size_t>(VertexFlow::out_node(v))])
            cut.push_back(v);
    }
    return cut;
}

int vertex_connectivity(const SubgraphView& view) {
    const auto vs = view.vertices();
    if (vs.size() < 2) throw std::invalid_argument("vertex_connectivity needs at least two vertices");
    int best = static_cast<int>(vs.size()) - 1;
    bool found_pair = false;
    for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = i + 1; j < vs.size(); ++j) {
            if (view.base().adjacent(vs[i], vs[j])) continue;
            found_pair = true;
            const int c = static_cast<int>(min_vertex_cut(view, vs[i], vs[j]).size());
            best = std::min(best, c);
            if (best == 0) return 0;
        }
    }
    return found_pair ? best : static_cast<int>(vs.size()) - 1;
}

PathFamily k_fan(const SubgraphView& view, Vtx x, const std::vector<Vtx>& Y, int k) {
    if (contains_vtx(Y, x)) throw std::invalid_argument("k_fan: x must not lie in Y");
    if (static_cast<int>(Y.size()) < k) throw std::invalid_argument("k_fan: |Y| < k");
    if (!view.contains(x)) throw std::invalid_argument("k_fan: x not in view");
    for (Vtx y : Y)
        if (!view.contains(y)) throw std::invalid_argument("k_fan: target not in view");
    VertexFlow net(view);
    net.add_splits([&](Vtx v) { return v != x; });
    // Paths may not pass through Y internally: Y members only exit to the sink.
    net.add_edge_arcs([&](Vtx v, Vtx) { return !contains_vtx(Y, v); });
    net.add_arc(net.source(), VertexFlow::out_node(x), k);
    for (Vtx y : Y) net.add_arc(VertexFlow::out_node(y), net.sink(), 1);
    net.run(k);
    net.finalize_flow();

    PathFamily fam;
    fam.kind = FamilyKind::Fan;
    for (auto& p : net.extract_paths()) {
        std::vector<Vtx> full = {x};
        full.insert(full.end(), p.begin(), p.end());
        fam.paths.push_back(std::move(full));
    }
    return fam;
}

PathFamily disjoint_set_paths(const SubgraphView& view, const std::vector<Vtx>& X,
                              const std::vector<Vtx>& Y, int k) {
    if (static_cast<int>(X.size()) < k || static_cast<int>(Y.size()) < k)
        throw std::invalid_argument("disjoint_set_paths: sets smaller than k");
    for (Vtx v : X)
        if (!view.contains(v)) throw std::invalid_argument("disjoint_set_paths: X member not in view");
    for (Vtx v : Y)
        if (!view.contains(v)) throw std::invalid_argument("disjoint_set_paths: Y member not in view");
    VertexFlow net(view);
    net.add_splits([&](Vtx) { return true; });
    // Internally avoid X and Y: no arcs into X members, none out of Y members.
    net.add_edge_arcs([&](Vtx v, Vtx u) { return !contains_vtx(Y, v) && !contains_vtx(X, u); });
    for (Vtx v : X) net.add_arc(net.source(), VertexFlow::in_node(v), 1);
    for (Vtx y : Y) net.add_arc(VertexFlow::out_node(y), net.sink(), 1);
    net.run(k);
    net.finalize_flow();

    PathFamily fam;
    fam.kind = FamilyKind::SetDisjoint;
    fam.paths = net.extract_paths();
    return fam;
}

bool path_family_valid(const SubgraphView& view, const PathFamily& fam,
                       const std::vector<Vtx>& sources, const std::vector<Vtx>& targets) {
    for (const auto& p : fam.paths) {
        if (p.empty()) return false;
        for (Vtx v : p)
            if (!view.contains(v)) return false;
        for (size_t i = 0; i + 1 < p.size(); ++i)
            if (!view.base().adjacent(p[i], p[i + 1])) return false;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] == p[j]) return false;
    }
    switch (fam.kind) {
        case FamilyKind::InternallyDisjoint: {
            if (sources.size() != 1 || targets.size() != 1) return false;
            const Vtx x = sources[0], y = targets[0];
            std::vector<Vtx> internal;
            for (const auto& p : fam.paths) {
                if (p.front() != x || p.back() != y) return false;
                for (size_t i = 1; i + 1 < p.size(); ++i) {
                    if (contains_vtx(internal, p[i])) return false;
                    internal.push_back(p[i]);
                }
            }
            return true;
        }
        case FamilyKind::Fan: {
            if (sources.size() != 1) return false;
            const Vtx x = sources[0];
            std::vector<Vtx> used;  // internal vertices and endpoints
            std::vector<Vtx> ends;
            for (const auto& p : fam.paths) {
                if (p.front() != x) return false;
                if (!contains_vtx(targets, p.back())) return false;
                if (contains_vtx(ends, p.back())) return false;
                ends.push_back(p.back());
                for (size_t i = 1; i + 1 < p.size(); ++i) {
                    if (contains_vtx(targets, p[i])) return false;  // must avoid Y internally
                    if (contains_vtx(used, p[i])) return false;
                    used.push_back(p[i]);
                }
            }
            return true;
        }
        case FamilyKind::SetDisjoint: {
            std::vector<Vtx> all;
            for (const auto& p : fam.paths) {
                if (!contains_vtx(sources, p.front())) return false;
                if (!contains_vtx(targets, p.back())) return false;
                for (size_t i = 1; i + 1 < p.size(); ++i)
                    if (contains_vtx(sources, p[i]) || contains_vtx(targets, p[i])) return false;
                for (Vtx v : p) {
                    if (contains_vtx(all, v)) return false;
                    all.push_back(v);
                }
            }
            return true;
        }
    }
    return false;
}

bool view_connected(const SubgraphView& view) {
    const auto vs = view.vertices();
    if (vs.empty()) return true;
    return same_component(view, vs);
}

bool same_component(const SubgraphView& view, const std::vector<Vtx>& vs) {
    if (vs.empty()) return true;
    for (Vtx v : vs)
        if (!view.contains(v)) return false;
    std::vector<uint8_t> seen(view.base().vertex_count(), 0);
    std::vector<Vtx> queue = {vs[0]};
    seen[vs[0]] = 1;
    size_t reached = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
        view.for_each_neighbor(queue[h], [&](Vtx u) {
            if (!seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
        });
    }
    for (Vtx v : vs)
        if (seen[v]) ++reached;
    return reached == vs.size();
}

std::vector<Vtx> bfs_path(const SubgraphView& view, Vtx from, Vtx to) {
    return bfs_path_from_set(view, {from}, to);
}

std::vector<Vtx> bfs_path_from_set(const SubgraphView& view, const std::vector<Vtx>& seeds, Vtx to) {
    if (!view.contains(to)) return {};
    std::vector<Vtx> parent(view.base().vertex_count(), kNoVtx);
    std::vector<uint8_t> seen(view.base().vertex_count(), 0);
    std::vector<Vtx> queue;
    for (Vtx s : seeds) {
        if (!view.contains(s) || seen[s]) continue;
        seen[s] = 1;
        queue.push_back(s);
    }
    for (size_t h = 0; h < queue.size(); ++h) {
        const Vtx v = queue[h];
        if (v == to) break;
        view.for_each_neighbor(v, [&](Vtx u) {
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                queue.push_back(u);
            }
        });
    }
    if (!seen[to]) return {};
    std::vector<Vtx> path = {to};
    while (parent[path.back()] != kNoVtx) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

EdgeList steiner_tree(const SubgraphView& view, std::vector<Vtx> terminals) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.empty()) throw std::invalid_argument("steiner_tree: no terminals");
    for (Vtx t : terminals)
        if (!view.contains(t)) throw std::invalid_argument("steiner_tree: terminal not in view");
    if (terminals.size() == 1) return {};

    EdgeList tree;
    std::vector<Vtx> in_tree = {terminals[0]};
    for (size_t t = 1; t < terminals.size(); ++t) {
        const Vtx target = terminals[t];
        if (contains_vtx(in_tree, target)) continue;
        const auto path = bfs_path_from_set(view, in_tree, target);
        if (path.empty()) throw std::invalid_argument("steiner_tree: terminals span several components");
        add_path(tree, path);
        for (Vtx v : path)
            if (!contains_vtx(in_tree, v)) in_tree.push_back(v);
        std::sort(in_tree.begin(), in_tree.end());
    }
    normalize(tree);
    return prune_to_steiner_tree(tree, terminals);
}

}  // namespace godan
