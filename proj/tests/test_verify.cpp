#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "godan/verify.hpp"

using namespace godan;

namespace {
Vtx vid(const CayleyGraph& g, const std::string& s) { return g.id_of(parse_permutation(s)); }
}  // namespace

TEST_CASE("verify_stree accepts valid trees and localizes failures") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    EdgeList edge;
    add_edge(edge, vid(g, "123"), vid(g, "213"));
    CHECK(verify_stree(g, edge, {vid(g, "123"), vid(g, "213")}).overall());

    // missing terminal
    const auto rep = verify_stree(g, edge, {vid(g, "123"), vid(g, "321")});
    CHECK(!rep.overall());
    CHECK(rep.first_failure().find("S covered") != std::string::npos);

    // non-edge
    EdgeList nonedge;
    add_edge(nonedge, vid(g, "123"), vid(g, "321"));
    const auto rep2 = verify_stree(g, nonedge, {vid(g, "123"), vid(g, "321")});
    CHECK(!rep2.overall());
    CHECK(rep2.first_failure().find("edge") != std::string::npos);

    // cycle
    EdgeList cyc;
    add_edge(cyc, vid(g, "123"), vid(g, "231"));
    add_edge(cyc, vid(g, "231"), vid(g, "312"));
    add_edge(cyc, vid(g, "312"), vid(g, "123"));
    CHECK(!verify_stree(g, cyc, {vid(g, "123")}).overall());
}

TEST_CASE("verify_idst detects sharing") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const std::vector<Vtx> S = {vid(g, "123"), vid(g, "213")};
    EdgeList t1;
    add_edge(t1, S[0], S[1]);
    EdgeList t2;  // 123 - 231 - 321 - 213
    add_edge(t2, vid(g, "123"), vid(g, "231"));
    add_edge(t2, vid(g, "231"), vid(g, "321"));
    add_edge(t2, vid(g, "321"), vid(g, "213"));
    CHECK(verify_idst(g, {t1, t2}, S).overall());

    // duplicate tree: shared edges
    const auto dup = verify_idst(g, {t1, t1}, S);
    CHECK(!dup.overall());
    CHECK(dup.first_failure().find("edge-disjoint") != std::string::npos);

    // shared internal vertex: 123 - 312 - 132 - 213 plus a 132 - 321 branch
    EdgeList t3;
    add_edge(t3, vid(g, "123"), vid(g, "312"));
    add_edge(t3, vid(g, "312"), vid(g, "132"));
    add_edge(t3, vid(g, "132"), vid(g, "213"));
    add_edge(t3, vid(g, "132"), vid(g, "321"));
    const auto shared = verify_idst(g, {t2, t3}, S);
    CHECK(!shared.overall());
    CHECK(shared.first_failure().find("share only S") != std::string::npos);
}

TEST_CASE("structural suite passes for n = 3 and 4") {
    for (int n : {3, 4}) {
        const auto rep = structural_suite(n);
        INFO(rep.first_failure());
        CHECK(rep.overall());
    }
}

TEST_CASE("negative control: a corrupted graph fails regularity") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const auto bad = g.with_edge_removed(0, g.step(0, 1));
    // Re-run only the count/regularity logic through the public surface.
    size_t degree_sum = 0;
    bool regular = true;
    for (Vtx v = 0; v < bad.vertex_count(); ++v) {
        size_t d = 0;
        for (size_t k = 0; k < bad.generators().size(); ++k)
            if (bad.step(v, k) != v) ++d;
        degree_sum += d;
        if (d != 3) regular = false;
    }
    CHECK(!regular);
    CHECK(degree_sum == 2 * bad.edge_count());
}
