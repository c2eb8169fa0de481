#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "godan/io.hpp"

using namespace godan;

TEST_CASE("graph json dump") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    const auto j = graph_to_json(g);
    CHECK(j["n"] == 3);
    CHECK(j["vertices"].size() == 6);
    CHECK(j["edges"].size() == 9);
    CHECK(j["vertices"][0] == "123");
    // sorted edge list
    std::string prev;
    for (const auto& e : j["edges"]) {
        const std::string key = e[0].get<std::string>() + "|" + e[1].get<std::string>();
        CHECK(prev <= key);
        prev = key;
    }
}

TEST_CASE("dot export has cluster groups and all edges") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    const auto dot = graph_to_dot(g, 4);
    CHECK(dot.find("graph G {") == 0);
    CHECK(dot.find("subgraph cluster_1") != std::string::npos);
    size_t count = 0, pos = 0;
    while ((pos = dot.find(" -- ", pos)) != std::string::npos) {
        ++count;
        pos += 4;
    }
    CHECK(count == 48);
}

TEST_CASE("tree set json round trip re-verifies") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    const auto ts = build_idsts(g, {0, 3, 11, 17});
    const auto j = treeset_to_json(ts, g);
    CHECK(j["S"].size() == 4);
    CHECK(j["trees"].size() == 3);

    const auto back = treeset_from_json(j, g);
    CHECK(back.S == ts.S);
    REQUIRE(back.trees.size() == ts.trees.size());
    for (size_t i = 0; i < back.trees.size(); ++i) {
        EdgeList orig = ts.trees[i];
        normalize(orig);
        CHECK(back.trees[i] == orig);
    }
    CHECK(verify_idst(g, back.trees, back.S).overall());

    const auto dot = treeset_to_dot(ts, g);
    CHECK(dot.find("color=red") != std::string::npos);
}

TEST_CASE("csv rows") {
    const CayleyGraph& g = CayleyGraph::godan(4);
    const auto ts = build_idsts(g, {0, 1, 2, 3});
    CHECK(csv_header() == "n,S,trees,case_tag,verify,millis");
    const auto row = csv_row(g, ts, true, 0);
    CHECK(row.find("4,") == 0);
    CHECK(row.find("pass") != std::string::npos);
    CHECK(row.rfind(",0") == row.size() - 2);
}

TEST_CASE("verification report json") {
    const CayleyGraph& g = CayleyGraph::godan(3);
    EdgeList edge;
    add_edge(edge, 0, g.step(0, 0));
    const auto rep = verify_stree(g, edge, {0, g.step(0, 0)});
    const auto j = report_to_json(rep);
    CHECK(j["overall"] == true);
    CHECK(j["checks"].size() == rep.checks.size());
}
