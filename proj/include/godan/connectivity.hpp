#pragma once

#include <optional>
#include <vector>

#include "godan/graph.hpp"
#include "godan/tree.hpp"

namespace godan {

enum class FamilyKind : uint8_t { InternallyDisjoint, Fan, SetDisjoint };

// A family of paths from one of the Menger-type primitives. Each path is a
// vertex sequence whose consecutive vertices are adjacent in the view.
struct PathFamily {
    FamilyKind kind = FamilyKind::InternallyDisjoint;
    std::vector<std::vector<Vtx>> paths;
    // When a request could not be met, the certifying vertex cut.
    std::vector<Vtx> cut;

    bool complete(size_t k) const { return paths.size() >= k; }
};

// Validates the kind-specific disjointness contract; used by tests on every call.
bool path_family_valid(const SubgraphView& view, const PathFamily& fam,
                       const std::vector<Vtx>& sources, const std::vector<Vtx>& targets);

// k internally disjoint (x,y)-paths. If fewer exist, returns the maximum
// family plus a vertex cut of that size separating x from y.
PathFamily internally_disjoint_paths(const SubgraphView& view, Vtx x, Vtx y, int k);

// Minimum vertex set separating two distinct non-adjacent vertices.
// Throws std::invalid_argument on adjacent pairs.
std::vector<Vtx> min_vertex_cut(const SubgraphView& view, Vtx x, Vtx y);

// Minimum over non-adjacent pairs of min_vertex_cut sizes; |V|-1 when every
// pair is adjacent. Throws on views with fewer than two vertices.
int vertex_connectivity(const SubgraphView& view);

// k internally disjoint paths from x to k distinct vertices of Y, internally
// avoiding Y.
PathFamily k_fan(const SubgraphView& view, Vtx x, const std::vector<Vtx>& Y, int k);

// k fully vertex-disjoint paths, each from X to Y, internally avoiding X u Y.
// Members of X n Y yield zero-length paths.
PathFamily disjoint_set_paths(const SubgraphView& view, const std::vector<Vtx>& X,
                              const std::vector<Vtx>& Y, int k);

// --- search helpers on views ---

bool view_connected(const SubgraphView& view);
bool same_component(const SubgraphView& view, const std::vector<Vtx>& vs);

// Shortest path between two present vertices (empty when unreachable).
std::vector<Vtx> bfs_path(const SubgraphView& view, Vtx from, Vtx to);
// Shortest path from any seed to the target; front() is a seed vertex.
std::vector<Vtx> bfs_path_from_set(const SubgraphView& view, const std::vector<Vtx>& seeds, Vtx to);

// Deterministic S-tree inside a view: BFS from the smallest terminal,
// iteratively attaching each remaining terminal by a shortest path from the
// current tree, then pruning non-terminal leaves. Throws when the view does
// not connect S.
EdgeList steiner_tree(const SubgraphView& view, std::vector<Vtx> terminals);

}  // namespace godan
