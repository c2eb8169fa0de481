#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "godan/graph.hpp"
#include "godan/packing.hpp"
#include "godan/tree.hpp"

namespace godan {

// Identifies the construction branch that produced a tree set.
struct CaseTag {
    std::string lemma;    // base3 | recurse | s4 | ans3 | s3 | s22 | s211 | s1111
    std::string subcase;  // branch path within the lemma
    int m = 0;            // cluster position used by the dispatch (0: none)
    std::string detail;   // role assignment, translation, realization notes

    std::string branch_key() const { return subcase.empty() ? lemma : lemma + "/" + subcase; }
    std::string to_string() const;
};

struct SteinerTreeSet {
    int n = 0;
    std::vector<Vtx> S;
    std::vector<EdgeList> trees;
    CaseTag tag;
};

struct BuildOptions {
    bool fallback_search = false;  // on verification failure, retry via exact packing
    bool verify_output = true;     // verify every build (default; tests rely on it)
    PackOptions pack;
};

class BuildError : public std::runtime_error {
public:
    BuildError(const CaseTag& tag, const std::string& what)
        : std::runtime_error("[" + tag.to_string() + "] " + what), tag_(tag) {}
    const CaseTag& tag() const { return tag_; }

private:
    CaseTag tag_;
};

// n-1 internally edge-disjoint S-trees for any 4-set S of the godan graph.
SteinerTreeSet build_idsts(const CayleyGraph& g, const std::vector<Vtx>& S,
                           const BuildOptions& opts = {});

// t verified IDSTs for a 4-set inside one alternating part, by exact search.
std::vector<EdgeList> an_idst_pack(const CayleyGraph& g, int part, const std::vector<Vtx>& S,
                                   int t, const PackOptions& opts = {});

// Left translation v -> sigma o v; preserves adjacency and maps position-m
// clusters onto position-m clusters.
Vtx left_translate_vertex(const CayleyGraph& g, const Permutation& sigma, Vtx v);
EdgeList left_translate_edges(const CayleyGraph& g, const Permutation& sigma, const EdgeList& es);
std::vector<Vtx> left_translate_vertices(const CayleyGraph& g, const Permutation& sigma,
                                         const std::vector<Vtx>& vs);

// All y with the lemma_s1111 Case-1 relation against x = identity, subject to
// the all-positions-distinct condition. Finite only for n <= 6.
std::vector<Permutation> case1_y_candidates(int n);

}  // namespace godan
