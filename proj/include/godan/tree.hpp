#pragma once

#include <utility>
#include <vector>

#include "godan/graph.hpp"

namespace godan {

// Undirected edge, stored normalized (a < b).
struct Edge {
    Vtx a, b;
    Edge(Vtx u, Vtx v) : a(u < v ? u : v), b(u < v ? v : u) {}
    bool operator==(const Edge&) const = default;
    bool operator<(const Edge& o) const { return a != o.a ? a < o.a : b < o.b; }
};

// A set of edges, kept sorted and deduplicated.
using EdgeList = std::vector<Edge>;

void add_edge(EdgeList& es, Vtx u, Vtx v);
void add_edges(EdgeList& es, const EdgeList& more);
void add_path(EdgeList& es, const std::vector<Vtx>& path);
void normalize(EdgeList& es);

std::vector<Vtx> vertices_of(const EdgeList& es);
bool has_vertex(const EdgeList& es, Vtx v);

// Connectivity over the edge list's own vertex set.
bool edges_connected(const EdgeList& es);
bool is_tree(const EdgeList& es);

// Remove all edges incident to v.
EdgeList without_vertex(const EdgeList& es, Vtx v);

// Degree of v within the edge list, and its incident tree neighbors.
int degree_in(const EdgeList& es, Vtx v);
std::vector<Vtx> tree_neighbors(const EdgeList& es, Vtx v);

// Coincidence guard used after assembling a tree from lemma pieces: take a
// BFS spanning tree of the assembled connected subgraph (rooted at the
// smallest terminal), then repeatedly prune non-terminal leaves. Throws if
// the assembly does not connect all terminals.
EdgeList prune_to_steiner_tree(const EdgeList& es, const std::vector<Vtx>& terminals);

}  // namespace godan
