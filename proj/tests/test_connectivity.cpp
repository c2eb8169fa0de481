#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "godan/connectivity.hpp"
#include "godan/rng.hpp"

using namespace godan;

namespace {
Vtx vid(const CayleyGraph& g, const std::string& s) { return g.id_of(parse_permutation(s)); }
}  // namespace

TEST_CASE("internally disjoint paths in small graphs") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const auto view = full_view(g);
    const auto fam = internally_disjoint_paths(view, vid(g, "123"), vid(g, "321"), 3);
    CHECK(fam.paths.size() == 3);
    CHECK(path_family_valid(view, fam, {vid(g, "123")}, {vid(g, "321")}));

    const auto one = internally_disjoint_paths(view, vid(g, "123"), vid(g, "132"), 1);
    CHECK(one.paths.size() == 1);

    // adjacent endpoints: the direct edge is one of the paths
    const auto adj = internally_disjoint_paths(view, vid(g, "123"), vid(g, "213"), 3);
    CHECK(adj.paths.size() == 3);
    bool has_direct = false;
    for (const auto& p : adj.paths) has_direct |= (p.size() == 2);
    CHECK(has_direct);

    const CayleyGraph& an4 = CayleyGraph::alt_network(4);
    const auto anview = full_view(an4);
    for (Vtx u = 0; u < an4.vertex_count(); ++u)
        for (Vtx v = u + 1; v < an4.vertex_count(); ++v) {
            const auto f = internally_disjoint_paths(anview, u, v, 3);
            CHECK(f.paths.size() == 3);
            CHECK(path_family_valid(anview, f, {u}, {v}));
        }
}

TEST_CASE("menger duality on EA_3 and EA_4") {
    for (int n : {3, 4}) {
        const CayleyGraph& g = CayleyGraph::godan(n);
        const auto view = full_view(g);
        for (Vtx u = 0; u < g.vertex_count(); ++u) {
            for (Vtx v = u + 1; v < g.vertex_count(); ++v) {
                if (g.adjacent(u, v)) continue;
                const auto cut = min_vertex_cut(view, u, v);
                const auto fam =
                    internally_disjoint_paths(view, u, v, static_cast<int>(g.vertex_count()));
                CHECK(cut.size() == fam.paths.size());
                CHECK(cut.size() == static_cast<size_t>(n));
                // removing the cut separates u from v
                SubgraphView cutview(g);
                cutview.remove_all(cut);
                CHECK(!same_component(cutview, {u, v}));
            }
        }
    }
    const CayleyGraph& g = CayleyGraph::godan(3);
    CHECK_THROWS_AS(min_vertex_cut(full_view(g), vid(g, "123"), vid(g, "213")),
                    std::invalid_argument);
}

TEST_CASE("menger duality sampled on EA_5") {
    const CayleyGraph& g = CayleyGraph::godan(5);
    const auto view = full_view(g);
    Rng rng(42);
    int done = 0;
    while (done < 500) {
        const Vtx u = static_cast<Vtx>(rng.below(g.vertex_count()));
        const Vtx v = static_cast<Vtx>(rng.below(g.vertex_count()));
        if (u == v || g.adjacent(u, v)) continue;
        const auto cut = min_vertex_cut(view, u, v);
        const auto fam = internally_disjoint_paths(view, u, v, 6);
        CHECK(cut.size() == fam.paths.size());
        CHECK(cut.size() == 5);
        ++done;
    }
}

TEST_CASE("vertex connectivity of the families") {
    CHECK(vertex_connectivity(full_view(CayleyGraph::godan(3))) == 3);
    CHECK(vertex_connectivity(full_view(CayleyGraph::godan(4))) == 4);
    CHECK(vertex_connectivity(full_view(CayleyGraph::alt_network(4))) == 3);
    CHECK(vertex_connectivity(full_view(CayleyGraph::alt_network(3))) == 2);
}

TEST_CASE("k-fan reaches distinct targets avoiding Y") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    const auto view = full_view(g);
    const Vtx x = vid(g, "1234");
    const auto nb = neighbors(view, x);
    const auto fan = k_fan(view, x, nb, 4);
    CHECK(fan.paths.size() == 4);
    CHECK(path_family_valid(view, fan, {x}, nb));
    for (const auto& p : fan.paths) CHECK(p.size() == 2);

    const CayleyGraph& g3 = CayleyGraph::godan(3);
    const auto view3 = full_view(g3);
    const std::vector<Vtx> Y = {vid(g3, "321"), vid(g3, "132")};
    const auto fan2 = k_fan(view3, vid(g3, "123"), Y, 2);
    CHECK(fan2.paths.size() == 2);
    CHECK(path_family_valid(view3, fan2, {vid(g3, "123")}, Y));

    const auto fan1 = k_fan(view3, vid(g3, "123"), Y, 1);
    CHECK(fan1.paths.size() == 1);
    CHECK_THROWS_AS(k_fan(view3, vid(g3, "123"), {vid(g3, "123")}, 1), std::invalid_argument);
}

TEST_CASE("disjoint set paths") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    // X = Y gives trivial zero-length paths
    const auto view = full_view(g);
    const std::vector<Vtx> X = {0, 5};
    const auto same = disjoint_set_paths(view, X, X, 2);
    CHECK(same.paths.size() == 2);
    for (const auto& p : same.paths) CHECK(p.size() == 1);

    // two clusters of EA_4 with k = 2
    const auto uv = clusters_view(g, 4, {1, 2});
    std::vector<Vtx> A, B;
    for (Vtx v : uv.vertices()) {
        if (cluster_of(g, v, 4) == 1 && A.size() < 2) A.push_back(v);
        if (cluster_of(g, v, 4) == 2 && B.size() < 2) B.push_back(v);
    }
    const auto fam = disjoint_set_paths(uv, A, B, 2);
    CHECK(fam.paths.size() == 2);
    CHECK(path_family_valid(uv, fam, A, B));
    std::set<Vtx> fronts, backs;
    for (const auto& p : fam.paths) {
        fronts.insert(p.front());
        backs.insert(p.back());
    }
    CHECK(fronts.size() == 2);
    CHECK(backs.size() == 2);
}

TEST_CASE("cluster union connectivity supports the set-path lemma") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
            CHECK(vertex_connectivity(clusters_view(g, 4, {i, j})) >= 2);
}

TEST_CASE("steiner trees in views") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const auto view = full_view(g);
    CHECK(steiner_tree(view, {vid(g, "123")}).empty());

    const auto pair_tree = steiner_tree(view, {vid(g, "123"), vid(g, "213")});
    REQUIRE(pair_tree.size() == 1);
    CHECK(pair_tree[0] == Edge(vid(g, "123"), vid(g, "213")));

    const auto t = steiner_tree(view, {vid(g, "123"), vid(g, "321"), vid(g, "132")});
    CHECK(t.size() <= 4);
    CHECK(is_tree(t));
    for (Vtx v : {vid(g, "123"), vid(g, "321"), vid(g, "132")}) CHECK(has_vertex(t, v));

    // deterministic: equal inputs, equal output
    CHECK(steiner_tree(view, {vid(g, "123"), vid(g, "321"), vid(g, "132")}) == t);

    SubgraphView split(g);  // separate the terminals
    split.remove(vid(g, "213"));
    split.remove(vid(g, "231"));
    split.remove(vid(g, "312"));
    CHECK_THROWS_AS(steiner_tree(split, {vid(g, "123"), vid(g, "321")}), std::invalid_argument);
}

TEST_CASE("deletion-pattern views stay connected") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const Vtx x = static_cast<Vtx>(rng.below(g.vertex_count()));
        const Vtx xt = parity_neighbor(g, x);
        std::vector<Vtx> nbrs;
        for (size_t k = 1; k < g.generators().size(); ++k) nbrs.push_back(g.step(x, k));
        const size_t keep = rng.below(nbrs.size());
        SubgraphView view(g);
        for (size_t i = 0; i < nbrs.size(); ++i)
            if (i != keep) view.remove(nbrs[i]);
        view.remove(xt);
        std::vector<Vtx> cands;
        for (size_t k = 0; k < g.generators().size(); ++k)
            if (g.step(xt, k) != x) cands.push_back(g.step(xt, k));
        view.remove(cands[rng.below(cands.size())]);
        CHECK(view_connected(view));
    }
}
