#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "godan/perm.hpp"

namespace godan {

using Vtx = uint32_t;
constexpr Vtx kNoVtx = static_cast<Vtx>(-1);

enum class GraphKind : uint8_t { Godan, AltNetwork };

// An immutable Cayley graph: EA_n on S_n with connection set Omega*, or
// AN_n on A_n with connection set Omega. Vertices carry dense ids; for EA_n
// the id equals the lexicographic rank of the one-line notation.
class CayleyGraph {
public:
    static const CayleyGraph& godan(int n);        // cached per n
    static const CayleyGraph& alt_network(int n);  // cached per n

    GraphKind kind() const { return kind_; }
    int n() const { return n_; }
    Vtx vertex_count() const { return static_cast<Vtx>(perms_.size()); }
    size_t edge_count() const;
    int degree() const { return static_cast<int>(gens_.size()); }

    const Permutation& perm_of(Vtx v) const { return perms_[v]; }
    Vtx id_of(const Permutation& p) const;
    bool has_perm(const Permutation& p) const;

    const std::vector<GeneratorTag>& generators() const { return gens_; }
    // Neighbor reached from v by the g-th generator (generator order of generators()).
    Vtx step(Vtx v, size_t g) const { return nbrs_[v * gens_.size() + g]; }
    const Vtx* neighbors_raw(Vtx v) const { return &nbrs_[v * gens_.size()]; }
    bool adjacent(Vtx u, Vtx v) const;

    // Test-support corruption helper: a copy with one edge dropped, for
    // validating that the verifier catches structural damage.
    CayleyGraph with_edge_removed(Vtx u, Vtx v) const;

    std::string label(Vtx v) const { return to_string(perms_[v]); }

private:
    CayleyGraph(GraphKind kind, int n);

    GraphKind kind_;
    int n_;
    std::vector<GeneratorTag> gens_;
    std::vector<Permutation> perms_;       // id -> permutation, sorted lexicographically
    std::map<std::vector<uint8_t>, Vtx> ids_;
    std::vector<Vtx> nbrs_;                // vertex_count x degree table
};

// Position-m cluster EA_n^{m:i}: vertices whose m-th symbol is i.
struct ClusterRef {
    int m = 0;
    int i = 0;
    bool operator==(const ClusterRef&) const = default;
};

// --- cluster / part primitives (on the godan graph; m in [4, n]) ---

int cluster_of(const CayleyGraph& g, Vtx v, int m);
// v o (12)(3m), the unique neighbor outside v's position-m cluster.
Vtx out_neighbor(const CayleyGraph& g, Vtx v, int m);
// v o (12), the unique neighbor in the opposite alternating part.
Vtx parity_neighbor(const CayleyGraph& g, Vtx v);
// 1 for the even part (A_n), 2 for the odd part.
int an_part_of(const CayleyGraph& g, Vtx v);

// The unique in-cluster neighbor x_j of v with out_neighbor(x_j, m) in cluster
// (m, j), for every j != cluster_of(v, m). Throws on internal inconsistency.
std::map<int, Vtx> ordered_neighbors(const CayleyGraph& g, Vtx v, int m);
// Shorthand for one entry of the map.
Vtx nbr_toward(const CayleyGraph& g, Vtx v, int j, int m);

// The 2-edge path v - x_j - x_j' into cluster (m, j).
struct TwoStepPath {
    Vtx from, mid, to;
};
TwoStepPath two_step_path(const CayleyGraph& g, Vtx v, int j, int m);

// All edges between clusters (m,i) and (m,j); count is (n-2)!.
std::vector<std::pair<Vtx, Vtx>> cross_edges(const CayleyGraph& g, int m, int i, int j);

// True iff {x,y,z} induces a 3-cycle, equivalently {y,z} = {x o (123), x o (132)}.
bool is_triangle(const CayleyGraph& g, Vtx x, Vtx y, Vtx z);

// Edge-preserving bijection cluster (m,i) of EA_n <-> V(EA_{n-1}), realized by
// an order-preserving symbol relabeling (fixing 1,2,3 where possible) plus an
// order-preserving position relabeling.
class ClusterIso {
public:
    ClusterIso(const CayleyGraph& g, int m, int i);
    const CayleyGraph& sub() const { return *sub_; }
    Vtx map(Vtx cluster_vertex) const;    // godan(n) id -> godan(n-1) id
    Vtx unmap(Vtx sub_vertex) const;      // godan(n-1) id -> godan(n) id

private:
    const CayleyGraph* base_;
    const CayleyGraph* sub_;
    int m_, i_;
    std::vector<uint8_t> sym_;     // lambda: symbol in [n]\{i} -> [n-1]
    std::vector<uint8_t> sym_inv_;
    std::vector<uint8_t> pos_;     // psi: position in [n]\{m} -> [n-1]
    std::vector<uint8_t> pos_inv_;
};

// A graph restricted by a presence mask; all primitives run on views.
class SubgraphView {
public:
    explicit SubgraphView(const CayleyGraph& g);  // full graph

    const CayleyGraph& base() const { return *base_; }
    bool contains(Vtx v) const { return present_[v] != 0; }
    Vtx present_count() const { return count_; }

    SubgraphView& remove(Vtx v);
    SubgraphView& remove_all(const std::vector<Vtx>& vs);
    // Keep only vertices satisfying pred (intersection with current mask).
    template <typename Pred>
    SubgraphView& restrict(Pred&& pred) {
        for (Vtx v = 0; v < present_.size(); ++v) {
            if (present_[v] && !pred(v)) {
                present_[v] = 0;
                --count_;
            }
        }
        return *this;
    }

    template <typename Fn>
    void for_each_neighbor(Vtx v, Fn&& fn) const {
        const size_t deg = base_->generators().size();
        const Vtx* row = base_->neighbors_raw(v);
        for (size_t g = 0; g < deg; ++g) {
            const Vtx u = row[g];
            if (present_[u]) fn(u);
        }
    }

    std::vector<Vtx> vertices() const;

private:
    const CayleyGraph* base_;
    std::vector<uint8_t> present_;
    Vtx count_;
};

// View factories.
SubgraphView full_view(const CayleyGraph& g);
SubgraphView cluster_view(const CayleyGraph& g, int m, int i);
SubgraphView clusters_view(const CayleyGraph& g, int m, const std::vector<int>& symbols);
SubgraphView an_part_view(const CayleyGraph& g, int part);

// In-view neighbor set of a present vertex, in generator order.
// Throws std::invalid_argument when v is not in the view.
std::vector<Vtx> neighbors(const SubgraphView& view, Vtx v);

}  // namespace godan
