#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "godan/connectivity.hpp"
#include "godan/graph.hpp"
#include "godan/tree.hpp"

namespace godan {

struct PackOptions {
    uint64_t node_budget = 50'000'000;  // search nodes before giving up
    int max_view_size = 5100;           // admits EA_7; searches beyond n=6 are best effort
    // diagnostics: disable the flow prune to cross-check exactness
    bool debug_no_flow_prune = false;
};

enum class PackStatus : uint8_t { Exact, LowerBound };

// Result of the exact packing search for one terminal set.
struct PackingResult {
    std::vector<Vtx> S;
    int max_t = 0;
    std::vector<std::vector<EdgeList>> witness_stack;  // witness for max_t (last entry)
    uint64_t explored = 0;
    PackStatus status = PackStatus::Exact;

    const std::vector<EdgeList>* witness() const {
        return witness_stack.empty() ? nullptr : &witness_stack.back();
    }
};

// Tries to pack exactly t internally edge-disjoint S-trees inside the view.
// Exact; returns std::nullopt when none exist (or budget ran out, reported
// via *exhausted_budget). Deterministic for fixed inputs.
std::optional<std::vector<EdgeList>> pack_idst(const SubgraphView& view, const std::vector<Vtx>& S,
                                               int t, const PackOptions& opts = {},
                                               uint64_t* explored = nullptr,
                                               bool* exhausted_budget = nullptr);

// Maximum number of IDSTs for S inside the view, by iterating pack_idst from
// a warm-start value. Exact up to the node budget.
PackingResult kappa_S_exact(const SubgraphView& view, const std::vector<Vtx>& S, int warm_start = 1,
                            const PackOptions& opts = {});

struct KappaKPolicy {
    bool exhaustive = true;
    int samples = 0;
    uint64_t seed = 0;
};

struct KappaKResult {
    int value = 0;           // exact minimum, or the sampled upper bound
    bool exact = false;
    std::vector<Vtx> min_S;  // a minimizing subset
    uint64_t seed = 0;
    uint64_t subsets = 0;
};

// kappa_k(G) = min over k-subsets S of kappa_G(S). Exhaustive only for
// |V| <= 24; sampling yields a certified upper bound.
KappaKResult kappa_k_exact(const CayleyGraph& g, int k, const KappaKPolicy& policy,
                           const PackOptions& opts = {});

// delta(G)-1 when two adjacent minimum-degree vertices exist, else nullopt.
std::optional<int> upper_bound_min_degree_rule(const SubgraphView& view, int k);

// Whitney's formulation: min over 2-subsets of the maximum number of
// internally disjoint paths.
int whitney_kappa(const SubgraphView& view);

}  // namespace godan
