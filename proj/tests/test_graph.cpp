#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "godan/graph.hpp"
#include "godan/rng.hpp"

using namespace godan;

namespace {
Vtx vid(const CayleyGraph& g, const std::string& s) { return g.id_of(parse_permutation(s)); }
}  // namespace

TEST_CASE("vertex and edge counts") {
    const CayleyGraph& e3 = CayleyGraph::godan(3);
    CHECK(e3.vertex_count() == 6);
    CHECK(e3.edge_count() == 9);
    CHECK(e3.degree() == 3);

    const CayleyGraph& e4 = CayleyGraph::godan(4);
    CHECK(e4.vertex_count() == 24);
    CHECK(e4.edge_count() == 48);

    const CayleyGraph& a4 = CayleyGraph::alt_network(4);
    CHECK(a4.vertex_count() == 12);
    CHECK(a4.edge_count() == 18);

    for (int n = 5; n <= 6; ++n) {
        const CayleyGraph& g = CayleyGraph::godan(n);
        CHECK(g.vertex_count() == factorial(n));
        CHECK(g.edge_count() == static_cast<size_t>(n) * factorial(n) / 2);
    }
    CHECK_THROWS_AS(CayleyGraph::godan(2), std::invalid_argument);
}

TEST_CASE("neighbors and views") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const auto view = full_view(g);
    const auto nb = neighbors(view, vid(g, "123"));
    CHECK(std::set<Vtx>(nb.begin(), nb.end()) ==
          std::set<Vtx>{vid(g, "213"), vid(g, "231"), vid(g, "312")});

    SubgraphView del(g);
    del.remove(vid(g, "213"));
    const auto nb2 = neighbors(del, vid(g, "123"));
    CHECK(std::set<Vtx>(nb2.begin(), nb2.end()) == std::set<Vtx>{vid(g, "231"), vid(g, "312")});
    CHECK_THROWS_AS(neighbors(del, vid(g, "213")), std::invalid_argument);

    const CayleyGraph& an = CayleyGraph::alt_network(3);
    const auto anb = neighbors(full_view(an), an.id_of(parse_permutation("123")));
    CHECK(anb.size() == 2);
}

TEST_CASE("parity neighbor and parts") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    CHECK(parity_neighbor(g, vid(g, "1234")) == vid(g, "2134"));
    CHECK(an_part_of(g, vid(g, "1234")) == 1);
    CHECK(an_part_of(g, vid(g, "2134")) == 2);
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        CHECK(parity_neighbor(g, parity_neighbor(g, v)) == v);
        CHECK(an_part_of(g, parity_neighbor(g, v)) == 3 - an_part_of(g, v));
    }
    const auto part1 = an_part_view(g, 1);
    CHECK(part1.present_count() == 12);
    size_t edges = 0;
    for (Vtx v : part1.vertices())
        part1.for_each_neighbor(v, [&](Vtx) { ++edges; });
    CHECK(edges / 2 == 18);
}

TEST_CASE("out neighbors and clusters") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    CHECK(out_neighbor(g, vid(g, "1234"), 4) == vid(g, "2143"));
    CHECK(cluster_of(g, vid(g, "1234"), 4) == 4);
    CHECK(cluster_of(g, vid(g, "2143"), 4) == 3);
    CHECK_THROWS_AS(cluster_of(g, 0, 3), std::invalid_argument);

    int count = 0;
    for (Vtx v = 0; v < g.vertex_count(); ++v)
        if (cluster_of(g, v, 4) == 1) ++count;
    CHECK(count == 6);

    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const Vtx v = static_cast<Vtx>(rng.below(g.vertex_count()));
        CHECK(cluster_of(g, out_neighbor(g, v, 4), 4) != cluster_of(g, v, 4));
        CHECK(out_neighbor(g, out_neighbor(g, v, 4), 4) == v);
    }
}

TEST_CASE("ordered neighbors and two-step paths") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    const auto m = ordered_neighbors(g, vid(g, "1234"), 4);
    REQUIRE(m.size() == 3);
    CHECK(m.at(1) == vid(g, "2314"));
    CHECK(m.at(2) == vid(g, "3124"));
    CHECK(m.at(3) == vid(g, "2134"));

    for (Vtx v = 0; v < g.vertex_count(); ++v)
        CHECK(ordered_neighbors(g, v, 4).size() == 3);

    const auto path = two_step_path(g, vid(g, "1234"), 1, 4);
    CHECK(path.mid == vid(g, "2314"));
    CHECK(path.to == vid(g, "3241"));
    const auto path3 = two_step_path(g, vid(g, "1234"), 3, 4);
    CHECK(path3.mid == vid(g, "2134"));
    CHECK(path3.to == vid(g, "1243"));
    CHECK_THROWS_AS(two_step_path(g, vid(g, "1234"), 4, 4), std::invalid_argument);

    // the (12)-neighbor is the one sharing the out-neighbor's cluster
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        const Vtx swap_nbr = g.id_of(apply_generator(g.perm_of(v), {GenKind::Swap12, 0}));
        const int j = cluster_of(g, out_neighbor(g, v, 4), 4);
        CHECK(nbr_toward(g, v, j, 4) == swap_nbr);
        CHECK(out_neighbor(g, swap_nbr, 4) ==
              g.id_of(apply_generator(g.perm_of(out_neighbor(g, v, 4)), {GenKind::Swap12, 0})));
    }

    // every two-step path lands in the requested cluster
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        const int own = cluster_of(g, v, 4);
        for (int j = 1; j <= 4; ++j) {
            if (j == own) continue;
            CHECK(cluster_of(g, two_step_path(g, v, j, 4).to, 4) == j);
        }
    }
}

TEST_CASE("cross edges count (n-2)!") {
    const CayleyGraph& e4 = CayleyGraph::godan(4);
    CHECK(cross_edges(e4, 4, 4, 3).size() == 2);
    CHECK_THROWS_AS(cross_edges(e4, 4, 2, 2), std::invalid_argument);
    const CayleyGraph& e5 = CayleyGraph::godan(5);
    CHECK(cross_edges(e5, 5, 1, 2).size() == 6);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (i != j) CHECK(cross_edges(e4, 4, i, j).size() == 2);

    // every cross edge is a (12)(3m) edge
    for (const auto& [u, v] : cross_edges(e4, 4, 1, 3))
        CHECK(out_neighbor(e4, u, 4) == v);
}

TEST_CASE("triangle characterization") {
    const CayleyGraph& g3 = CayleyGraph::godan(3);
    CHECK(is_triangle(g3, vid(g3, "123"), vid(g3, "231"), vid(g3, "312")));
    CHECK(!is_triangle(g3, vid(g3, "123"), vid(g3, "213"), vid(g3, "231")));
    CHECK_THROWS_AS(is_triangle(g3, 0, 0, 1), std::invalid_argument);

    // exhaustive agreement of the two definitions at n = 4
    const CayleyGraph& g = CayleyGraph::godan(4);
    for (Vtx x = 0; x < g.vertex_count(); ++x) {
        const Vtx c1 = g.id_of(apply_generator(g.perm_of(x), {GenKind::Cycle123, 0}));
        const Vtx c2 = g.id_of(apply_generator(g.perm_of(x), {GenKind::Cycle132, 0}));
        for (Vtx y = 0; y < g.vertex_count(); ++y) {
            if (y == x) continue;
            for (Vtx z = y + 1; z < g.vertex_count(); ++z) {
                if (z == x) continue;
                const bool expect = (y == c1 && z == c2) || (y == c2 && z == c1);
                CHECK(is_triangle(g, x, y, z) == expect);
            }
        }
    }
}

TEST_CASE("cluster isomorphism preserves adjacency") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    {
        const ClusterIso iso(g, 4, 4);
        CHECK(iso.sub().n() == 3);
        CHECK(iso.map(vid(g, "1234")) == iso.sub().id_of(parse_permutation("123")));
    }
    for (int i = 1; i <= 4; ++i) {
        const ClusterIso iso(g, 4, i);
        std::set<Vtx> image;
        for (Vtx v = 0; v < g.vertex_count(); ++v) {
            if (cluster_of(g, v, 4) != i) continue;
            const Vtx q = iso.map(v);
            image.insert(q);
            CHECK(iso.unmap(q) == v);
        }
        CHECK(image.size() == 6);
        // edge preservation, both directions
        for (Vtx v = 0; v < g.vertex_count(); ++v) {
            if (cluster_of(g, v, 4) != i) continue;
            for (Vtx u = v + 1; u < g.vertex_count(); ++u) {
                if (cluster_of(g, u, 4) != i) continue;
                CHECK(g.adjacent(v, u) == iso.sub().adjacent(iso.map(v), iso.map(u)));
            }
        }
    }
    // position isomorphism at m = 4 inside EA_5
    const CayleyGraph& g5 = CayleyGraph::godan(5);
    const ClusterIso iso5(g5, 4, 2);
    int checked = 0;
    for (Vtx v = 0; v < g5.vertex_count() && checked < 400; ++v) {
        if (cluster_of(g5, v, 4) != 2) continue;
        for (Vtx u = v + 1; u < g5.vertex_count(); ++u) {
            if (cluster_of(g5, u, 4) != 2) continue;
            CHECK(g5.adjacent(v, u) == iso5.sub().adjacent(iso5.map(v), iso5.map(u)));
            ++checked;
        }
    }
}

TEST_CASE("corruption helper drops one edge") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const Vtx a = 0, b = g.step(0, 0);
    const auto bad = g.with_edge_removed(a, b);
    CHECK(g.adjacent(a, b));
    CHECK(!bad.adjacent(a, b));
    CHECK(bad.edge_count() == g.edge_count() - 1);
}
