#include "godan/graph.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace godan {

namespace {

std::mutex g_cache_mutex;
std::map<int, std::unique_ptr<CayleyGraph>>& godan_cache() {
    static std::map<int, std::unique_ptr<CayleyGraph>> cache;
    return cache;
}
std::map<int, std::unique_ptr<CayleyGraph>>& an_cache() {
    static std::map<int, std::unique_ptr<CayleyGraph>> cache;
    return cache;
}

}  // namespace

CayleyGraph::CayleyGraph(GraphKind kind, int n) : kind_(kind), n_(n) {
    if (n < 3) throw std::invalid_argument("graph dimension must be >= 3");
    if (n > 8) throw std::invalid_argument("graph dimension too large to materialize");
    gens_ = (kind == GraphKind::Godan) ? omega_star(n) : omega(n);

    const uint64_t total = factorial(n);
    perms_.reserve(static_cast<size_t>(total));
    for (uint64_t r = 0; r < total; ++r) {
        Permutation p = perm_unrank(n, r);
        if (kind == GraphKind::AltNetwork && parity(p) != Parity::Even) continue;
        perms_.push_back(std::move(p));
    }
    for (Vtx v = 0; v < perms_.size(); ++v) ids_[perms_[v].image()] = v;

    nbrs_.resize(perms_.size() * gens_.size());
    for (Vtx v = 0; v < perms_.size(); ++v) {
        for (size_t g = 0; g < gens_.size(); ++g) {
            const Permutation u = apply_generator(perms_[v], gens_[g]);
            const auto it = ids_.find(u.image());
            if (it == ids_.end()) throw std::logic_error("generator left the vertex set");
            nbrs_[v * gens_.size() + g] = it->second;
        }
    }
}

const CayleyGraph& CayleyGraph::godan(int n) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& cache = godan_cache();
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::unique_ptr<CayleyGraph>(new CayleyGraph(GraphKind::Godan, n))).first;
    return *it->second;
}

const CayleyGraph& CayleyGraph::alt_network(int n) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& cache = an_cache();
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::unique_ptr<CayleyGraph>(new CayleyGraph(GraphKind::AltNetwork, n))).first;
    return *it->second;
}

size_t CayleyGraph::edge_count() const {
    size_t half_edges = 0;
    for (Vtx v = 0; v < vertex_count(); ++v)
        for (size_t g = 0; g < gens_.size(); ++g)
            if (step(v, g) != v) ++half_edges;
    return half_edges / 2;
}

Vtx CayleyGraph::id_of(const Permutation& p) const {
    const auto it = ids_.find(p.image());
    if (it == ids_.end()) throw std::invalid_argument("permutation is not a vertex of this graph");
    return it->second;
}

bool CayleyGraph::has_perm(const Permutation& p) const { return ids_.count(p.image()) != 0; }

bool CayleyGraph::adjacent(Vtx u, Vtx v) const {
    const Vtx* row = neighbors_raw(u);
    for (size_t g = 0; g < gens_.size(); ++g)
        if (row[g] == v) return true;
    return false;
}

CayleyGraph CayleyGraph::with_edge_removed(Vtx u, Vtx v) const {
    CayleyGraph g = *this;
    for (size_t k = 0; k < gens_.size(); ++k) {
        if (g.nbrs_[u * gens_.size() + k] == v) g.nbrs_[u * gens_.size() + k] = u;
        if (g.nbrs_[v * gens_.size() + k] == u) g.nbrs_[v * gens_.size() + k] = v;
    }
    return g;
}

// --- cluster / part primitives ---

namespace {
void check_position(const CayleyGraph& g, int m) {
    if (m < 4 || m > g.n()) throw std::invalid_argument("cluster position m out of range");
}
}  // namespace

int cluster_of(const CayleyGraph& g, Vtx v, int m) {
    check_position(g, m);
    return g.perm_of(v).at(m);
}

Vtx out_neighbor(const CayleyGraph& g, Vtx v, int m) {
    check_position(g, m);
    // (12)(3m) sits at index m-1 in the omega* order, m-2 in omega order.
    const size_t idx = static_cast<size_t>(m) - ((g.kind() == GraphKind::Godan) ? 1 : 2);
    return g.step(v, idx);
}

Vtx parity_neighbor(const CayleyGraph& g, Vtx v) {
    if (g.kind() != GraphKind::Godan) throw std::invalid_argument("parity neighbor lives in the godan graph");
    return g.step(v, 0);
}

int an_part_of(const CayleyGraph& g, Vtx v) {
    return parity(g.perm_of(v)) == Parity::Even ? 1 : 2;
}

std::map<int, Vtx> ordered_neighbors(const CayleyGraph& g, Vtx v, int m) {
    check_position(g, m);
    const int i = cluster_of(g, v, m);
    std::map<int, Vtx> out;
    const size_t deg = g.generators().size();
    const Vtx* row = g.neighbors_raw(v);
    const Vtx out_nbr = out_neighbor(g, v, m);
    for (size_t k = 0; k < deg; ++k) {
        const Vtx u = row[k];
        if (u == out_nbr) continue;
        const int j = cluster_of(g, out_neighbor(g, u, m), m);
        if (j == i || out.count(j)) throw std::logic_error("ordered neighbor map is not a bijection");
        out.emplace(j, u);
    }
    if (out.size() != static_cast<size_t>(g.n() - 1)) throw std::logic_error("ordered neighbor map incomplete");
    return out;
}

Vtx nbr_toward(const CayleyGraph& g, Vtx v, int j, int m) {
    check_position(g, m);
    const int i = cluster_of(g, v, m);
    if (j == i) throw std::invalid_argument("nbr_toward: target cluster equals own cluster");
    const size_t deg = g.generators().size();
    const Vtx* row = g.neighbors_raw(v);
    const Vtx out_nbr = out_neighbor(g, v, m);
    for (size_t k = 0; k < deg; ++k) {
        const Vtx u = row[k];
        if (u == out_nbr) continue;
        if (cluster_of(g, out_neighbor(g, u, m), m) == j) return u;
    }
    throw std::logic_error("nbr_toward: no in-cluster neighbor toward requested cluster");
}

TwoStepPath two_step_path(const CayleyGraph& g, Vtx v, int j, int m) {
    const Vtx mid = nbr_toward(g, v, j, m);
    return {v, mid, out_neighbor(g, mid, m)};
}

std::vector<std::pair<Vtx, Vtx>> cross_edges(const CayleyGraph& g, int m, int i, int j) {
    check_position(g, m);
    if (i == j) throw std::invalid_argument("cross_edges: clusters must differ");
    std::vector<std::pair<Vtx, Vtx>> out;
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        if (cluster_of(g, v, m) != i) continue;
        const Vtx u = out_neighbor(g, v, m);
        if (cluster_of(g, u, m) == j) out.emplace_back(v, u);
    }
    return out;
}

bool is_triangle(const CayleyGraph& g, Vtx x, Vtx y, Vtx z) {
    if (x == y || y == z || x == z) throw std::invalid_argument("is_triangle: vertices must be distinct");
    return g.adjacent(x, y) && g.adjacent(y, z) && g.adjacent(x, z);
}

// --- cluster isomorphism ---

ClusterIso::ClusterIso(const CayleyGraph& g, int m, int i) : base_(&g), m_(m), i_(i) {
    check_position(g, m);
    const int n = g.n();
    if (i < 1 || i > n) throw std::invalid_argument("cluster symbol out of range");
    sub_ = &CayleyGraph::godan(n - 1);

    sym_.assign(static_cast<size_t>(n + 1), 0);
    sym_inv_.assign(static_cast<size_t>(n), 0);
    if (i >= 4) {
        // Symbols stay put; n takes the slot freed by i. Any symbol bijection
        // commutes with the right generator action, so this preserves edges.
        for (int s = 1; s <= n - 1; ++s)
            if (s != i) sym_[static_cast<size_t>(s)] = static_cast<uint8_t>(s);
        if (i != n) sym_[static_cast<size_t>(n)] = static_cast<uint8_t>(i);
    } else {
        // i in {1,2,3}: the order-preserving bijection [n] \ {i} -> [n-1].
        for (int s = 1; s <= n; ++s)
            if (s != i) sym_[static_cast<size_t>(s)] = static_cast<uint8_t>(s < i ? s : s - 1);
    }
    for (int s = 1; s <= n; ++s) {
        if (s == i) continue;
        sym_inv_[sym_[static_cast<size_t>(s)] - 1u] = static_cast<uint8_t>(s);
    }

    pos_.assign(static_cast<size_t>(n + 1), 0);
    pos_inv_.assign(static_cast<size_t>(n), 0);
    for (int p = 1; p <= n; ++p) {
        if (p == m) continue;
        pos_[static_cast<size_t>(p)] = static_cast<uint8_t>(p < m ? p : p - 1);
        pos_inv_[pos_[static_cast<size_t>(p)] - 1u] = static_cast<uint8_t>(p);
    }
}

Vtx ClusterIso::map(Vtx cluster_vertex) const {
    const Permutation& v = base_->perm_of(cluster_vertex);
    if (v.at(m_) != i_) throw std::invalid_argument("vertex not in this cluster");
    const int n = base_->n();
    std::vector<uint8_t> im(static_cast<size_t>(n - 1));
    for (int p = 1; p <= n; ++p) {
        if (p == m_) continue;
        im[pos_[static_cast<size_t>(p)] - 1u] = sym_[v.at(p)];
    }
    return sub_->id_of(Permutation(std::move(im)));
}

Vtx ClusterIso::unmap(Vtx sub_vertex) const {
    const Permutation& q = sub_->perm_of(sub_vertex);
    const int n = base_->n();
    std::vector<uint8_t> im(static_cast<size_t>(n));
    im[static_cast<size_t>(m_ - 1)] = static_cast<uint8_t>(i_);
    for (int p = 1; p <= n - 1; ++p) im[pos_inv_[static_cast<size_t>(p - 1)] - 1u] = sym_inv_[q.at(p) - 1u];
    return base_->id_of(Permutation(std::move(im)));
}

// --- views ---

SubgraphView::SubgraphView(const CayleyGraph& g)
    : base_(&g), present_(g.vertex_count(), 1), count_(g.vertex_count()) {}

SubgraphView& SubgraphView::remove(Vtx v) {
    if (present_[v]) {
        present_[v] = 0;
        --count_;
    }
    return *this;
}

SubgraphView& SubgraphView::remove_all(const std::vector<Vtx>& vs) {
    for (Vtx v : vs) remove(v);
    return *this;
}

std::vector<Vtx> SubgraphView::vertices() const {
    std::vector<Vtx> out;
    out.reserve(count_);
    for (Vtx v = 0; v < present_.size(); ++v)
        if (present_[v]) out.push_back(v);
    return out;
}

SubgraphView full_view(const CayleyGraph& g) { return SubgraphView(g); }

SubgraphView cluster_view(const CayleyGraph& g, int m, int i) {
    SubgraphView view(g);
    view.restrict([&](Vtx v) { return cluster_of(g, v, m) == i; });
    return view;
}

SubgraphView clusters_view(const CayleyGraph& g, int m, const std::vector<int>& symbols) {
    SubgraphView view(g);
    view.restrict([&](Vtx v) {
        const int c = cluster_of(g, v, m);
        return std::find(symbols.begin(), symbols.end(), c) != symbols.end();
    });
    return view;
}

SubgraphView an_part_view(const CayleyGraph& g, int part) {
    if (part != 1 && part != 2) throw std::invalid_argument("an part must be 1 or 2");
    SubgraphView view(g);
    view.restrict([&](Vtx v) { return an_part_of(g, v) == part; });
    return view;
}

std::vector<Vtx> neighbors(const SubgraphView& view, Vtx v) {
    if (!view.contains(v)) throw std::invalid_argument("neighbors: vertex not present in view");
    std::vector<Vtx> out;
    view.for_each_neighbor(v, [&](Vtx u) {
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    });
    return out;
}

}  // namespace godan
