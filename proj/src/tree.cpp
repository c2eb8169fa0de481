#include "godan/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace godan {

void add_edge(EdgeList& es, Vtx u, Vtx v) {
    if (u == v) throw std::invalid_argument("self loop");
    es.emplace_back(u, v);
}

void add_edges(EdgeList& es, const EdgeList& more) { es.insert(es.end(), more.begin(), more.end()); }

void add_path(EdgeList& es, const std::vector<Vtx>& path) {
    for (size_t i = 0; i + 1 < path.size(); ++i) add_edge(es, path[i], path[i + 1]);
}

void normalize(EdgeList& es) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
}

std::vector<Vtx> vertices_of(const EdgeList& es) {
    std::vector<Vtx> vs;
    vs.reserve(es.size() * 2);
    for (const Edge& e : es) {
        vs.push_back(e.a);
        vs.push_back(e.b);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool has_vertex(const EdgeList& es, Vtx v) {
    for (const Edge& e : es)
        if (e.a == v || e.b == v) return true;
    return false;
}

namespace {

// Adjacency over the edge list's vertices, with vertices compacted by index.
struct LocalGraph {
    std::vector<Vtx> verts;
    std::vector<std::vector<int>> adj;

    explicit LocalGraph(const EdgeList& es) : verts(vertices_of(es)), adj(verts.size()) {
        for (const Edge& e : es) {
            const int ia = index_of(e.a), ib = index_of(e.b);
            adj[static_cast<size_t>(ia)].push_back(ib);
            adj[static_cast<size_t>(ib)].push_back(ia);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
    }

    int index_of(Vtx v) const {
        const auto it = std::lower_bound(verts.begin(), verts.end(), v);
        if (it == verts.end() || *it != v) return -1;
        return static_cast<int>(it - verts.begin());
    }
};

}  // namespace

bool edges_connected(const EdgeList& es) {
    if (es.empty()) return true;
    LocalGraph lg(es);
    std::vector<uint8_t> seen(lg.verts.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    size_t visited = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : lg.adj[static_cast<size_t>(v)]) {
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                ++visited;
                stack.push_back(u);
            }
        }
    }
    return visited == lg.verts.size();
}

bool is_tree(const EdgeList& es) {
    if (es.empty()) return true;
    EdgeList copy = es;
    normalize(copy);
    const auto vs = vertices_of(copy);
    return copy.size() + 1 == vs.size() && edges_connected(copy);
}

EdgeList without_vertex(const EdgeList& es, Vtx v) {
    EdgeList out;
    out.reserve(es.size());
    for (const Edge& e : es)
        if (e.a != v && e.b != v) out.push_back(e);
    return out;
}

int degree_in(const EdgeList& es, Vtx v) {
    int d = 0;
    for (const Edge& e : es)
        if (e.a == v || e.b == v) ++d;
    return d;
}

std::vector<Vtx> tree_neighbors(const EdgeList& es, Vtx v) {
    std::vector<Vtx> out;
    for (const Edge& e : es) {
        if (e.a == v) out.push_back(e.b);
        else if (e.b == v) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

EdgeList prune_to_steiner_tree(const EdgeList& raw, const std::vector<Vtx>& terminals) {
    EdgeList es = raw;
    normalize(es);
    if (terminals.size() <= 1) return {};  // single-vertex tree
    if (es.empty()) throw std::logic_error("assembled subgraph has no edges but several terminals");
    LocalGraph lg(es);
    for (Vtx t : terminals)
        if (lg.index_of(t) < 0) throw std::logic_error("assembled subgraph misses a terminal");

    // BFS spanning tree from the smallest terminal.
    const Vtx root = *std::min_element(terminals.begin(), terminals.end());
    const int r = lg.index_of(root);
    std::vector<int> parent(lg.verts.size(), -2);
    std::vector<int> queue = {r};
    parent[static_cast<size_t>(r)] = -1;
    for (size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int u : lg.adj[static_cast<size_t>(v)]) {
            if (parent[static_cast<size_t>(u)] == -2) {
                parent[static_cast<size_t>(u)] = v;
                queue.push_back(u);
            }
        }
    }
    for (Vtx t : terminals)
        if (parent[static_cast<size_t>(lg.index_of(t))] == -2)
            throw std::logic_error("assembled subgraph does not connect the terminals");

    EdgeList span;
    for (size_t v = 0; v < lg.verts.size(); ++v)
        if (parent[v] >= 0) add_edge(span, lg.verts[v], lg.verts[static_cast<size_t>(parent[v])]);
    normalize(span);

    // Prune non-terminal leaves until fixed point.
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<Vtx, int> deg;
        for (const Edge& e : span) {
            ++deg[e.a];
            ++deg[e.b];
        }
        for (const auto& [v, d] : deg) {
            if (d == 1 && std::find(terminals.begin(), terminals.end(), v) == terminals.end()) {
                span = without_vertex(span, v);
                changed = true;
                break;
            }
        }
    }
    return span;
}

}  // namespace godan
