#pragma once

#include <string>
#include <vector>

#include "godan/connectivity.hpp"
#include "godan/graph.hpp"
#include "godan/tree.hpp"

namespace godan {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Structured verification output; overall is the conjunction of all checks.
struct VerificationReport {
    std::string subject;
    std::vector<CheckResult> checks;

    bool overall() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
        return "";
    }
};

// Checks a single S-tree: edges exist, acyclic, connected, S covered.
VerificationReport verify_stree(const CayleyGraph& g, const EdgeList& tree,
                                const std::vector<Vtx>& S);

// Checks a full set of internally edge-disjoint S-trees: each tree valid,
// pairwise vertex intersection exactly S, pairwise edge intersection empty.
VerificationReport verify_idst(const CayleyGraph& g, const std::vector<EdgeList>& trees,
                               const std::vector<Vtx>& S);

struct StructuralOptions {
    uint64_t seed = 1;
    int deletion_samples = 100;  // random B-set deletions per graph
    int kappa_pair_samples = 500;  // sampled pairs when exhaustive is too big
};

// Machine-checks the structural lemmas the constructions rely on, at the
// scales the acceptance criteria state for this n.
VerificationReport structural_suite(int n, const StructuralOptions& opts = {});

}  // namespace godan
