#include "godan/verify.hpp"

#include <algorithm>
#include <set>

#include "godan/rng.hpp"

namespace godan {

namespace {

std::string vtx_list(const CayleyGraph& g, const std::vector<Vtx>& vs) {
    std::string out;
    for (Vtx v : vs) {
        if (!out.empty()) out += ",";
        out += g.label(v);
    }
    return out;
}

}  // namespace

VerificationReport verify_stree(const CayleyGraph& g, const EdgeList& tree,
                                const std::vector<Vtx>& S) {
    VerificationReport rep;
    rep.subject = "S-tree over {" + vtx_list(g, S) + "}";

    bool edges_ok = true;
    std::string bad_edge;
    for (const Edge& e : tree) {
        if (e.a >= g.vertex_count() || e.b >= g.vertex_count() || !g.adjacent(e.a, e.b)) {
            edges_ok = false;
            bad_edge = std::to_string(e.a) + "-" + std::to_string(e.b);
            break;
        }
    }
    rep.add("edges exist in graph", edges_ok, edges_ok ? "" : "edge absent: " + bad_edge);

    EdgeList norm = tree;
    normalize(norm);
    rep.add("no duplicate edges", norm.size() == tree.size());

    const auto vs = vertices_of(norm);
    const bool connected = edges_connected(norm);
    rep.add("connected", connected);
    rep.add("acyclic", norm.empty() || norm.size() + 1 == vs.size(),
            "edges=" + std::to_string(norm.size()) + " vertices=" + std::to_string(vs.size()));

    bool covered = true;
    std::string missing;
    for (Vtx t : S) {
        const bool in = (S.size() == 1 && norm.empty()) || has_vertex(norm, t);
        if (!in) {
            covered = false;
            missing = g.label(t);
            break;
        }
    }
    rep.add("S covered", covered, covered ? "" : "S not covered: " + missing);
    return rep;
}

VerificationReport verify_idst(const CayleyGraph& g, const std::vector<EdgeList>& trees,
                               const std::vector<Vtx>& S) {
    VerificationReport rep;
    rep.subject = std::to_string(trees.size()) + " IDSTs over {" + vtx_list(g, S) + "}";

    std::set<Vtx> terminals(S.begin(), S.end());
    for (size_t i = 0; i < trees.size(); ++i) {
        auto sub = verify_stree(g, trees[i], S);
        rep.add("tree " + std::to_string(i) + " valid", sub.overall(),
                sub.overall() ? "" : sub.first_failure());
    }

    for (size_t i = 0; i < trees.size(); ++i) {
        for (size_t j = i + 1; j < trees.size(); ++j) {
            const auto vi = vertices_of(trees[i]);
            const auto vj = vertices_of(trees[j]);
            std::vector<Vtx> shared;
            std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(),
                                  std::back_inserter(shared));
            bool vertex_ok = true;
            std::string offender;
            for (Vtx v : shared) {
                if (!terminals.count(v)) {
                    vertex_ok = false;
                    offender = g.label(v);
                    break;
                }
            }
            rep.add("trees " + std::to_string(i) + "," + std::to_string(j) + " share only S",
                    vertex_ok, vertex_ok ? "" : "internal vertex shared: " + offender);

            EdgeList ei = trees[i], ej = trees[j];
            normalize(ei);
            normalize(ej);
            EdgeList both;
            std::set_intersection(ei.begin(), ei.end(), ej.begin(), ej.end(),
                                  std::back_inserter(both));
            rep.add("trees " + std::to_string(i) + "," + std::to_string(j) + " edge-disjoint",
                    both.empty(),
                    both.empty() ? ""
                                 : "shared edge " + g.label(both[0].a) + "-" + g.label(both[0].b));
        }
    }
    return rep;
}

VerificationReport structural_suite(int n, const StructuralOptions& opts) {
    VerificationReport rep;
    rep.subject = "structural suite n=" + std::to_string(n);
    const CayleyGraph& ea = CayleyGraph::godan(n);
    const CayleyGraph& an = CayleyGraph::alt_network(n);
    Rng rng(opts.seed);

    // Counts and regularity.
    rep.add("|V(EA)| = n!", ea.vertex_count() == factorial(n));
    rep.add("|E(EA)| = n*n!/2", ea.edge_count() == static_cast<size_t>(n) * factorial(n) / 2);
    rep.add("|V(AN)| = n!/2", an.vertex_count() == factorial(n) / 2);
    rep.add("|E(AN)| = n!(n-1)/4",
            an.edge_count() == factorial(n) * static_cast<uint64_t>(n - 1) / 4);
    {
        bool reg = true;
        for (Vtx v = 0; v < ea.vertex_count() && reg; ++v) {
            std::set<Vtx> nb;
            for (size_t g = 0; g < ea.generators().size(); ++g) {
                const Vtx u = ea.step(v, g);
                if (u == v) reg = false;
                nb.insert(u);
            }
            if (nb.size() != static_cast<size_t>(n)) reg = false;
        }
        rep.add("EA is n-regular", reg);
    }

    // Both parts induce AN_n (adjacency agreement through the permutations).
    {
        bool iso = true;
        const auto part1 = an_part_view(ea, 1);
        for (Vtx v = 0; v < an.vertex_count() && iso; ++v) {
            const Vtx ev = ea.id_of(an.perm_of(v));
            std::set<std::vector<uint8_t>> an_nbrs, ea_nbrs;
            for (size_t g = 0; g < an.generators().size(); ++g)
                an_nbrs.insert(an.perm_of(an.step(v, g)).image());
            part1.for_each_neighbor(ev, [&](Vtx u) {
                if (an_part_of(ea, u) == 1) ea_nbrs.insert(ea.perm_of(u).image());
            });
            if (an_nbrs != ea_nbrs) iso = false;
        }
        rep.add("EA[A_n] agrees with AN", iso);
    }

    // Swap12 edges form a perfect matching between the parts.
    {
        bool matching = true;
        for (Vtx v = 0; v < ea.vertex_count() && matching; ++v) {
            int cross = 0;
            const int part = an_part_of(ea, v);
            for (size_t g = 0; g < ea.generators().size(); ++g)
                if (an_part_of(ea, ea.step(v, g)) != part) ++cross;
            if (cross != 1) matching = false;
            if (parity_neighbor(ea, parity_neighbor(ea, v)) != v) matching = false;
        }
        rep.add("Swap12 edges form a perfect matching", matching);
    }

    // Parity-neighbor adjacency: neighbors within the part map to neighbors of
    // the parity neighbor within the other part. Exhaustive for n <= 5.
    {
        bool ok = true;
        const Vtx limit = (n <= 5) ? ea.vertex_count() : 2000;
        for (Vtx v = 0; v < ea.vertex_count() && ok; ++v) {
            if (n > 5 && v >= limit) break;
            const int part = an_part_of(ea, v);
            const Vtx vt = parity_neighbor(ea, v);
            std::set<Vtx> expect;
            for (size_t g = 0; g < ea.generators().size(); ++g) {
                const Vtx b = ea.step(v, g);
                if (an_part_of(ea, b) == part) expect.insert(parity_neighbor(ea, b));
            }
            std::set<Vtx> got;
            for (size_t g = 0; g < ea.generators().size(); ++g) {
                const Vtx b = ea.step(vt, g);
                if (an_part_of(ea, b) != part) got.insert(b);
            }
            if (expect != got) ok = false;
        }
        rep.add("parity-neighbor adjacency lemma", ok);
    }

    // Triangle characterization. Exhaustive at n <= 4, sampled above.
    {
        bool ok = true;
        auto check_triple = [&](Vtx x, Vtx y, Vtx z) {
            const bool tri = is_triangle(ea, x, y, z);
            const Permutation a = ea.perm_of(x);
            const Vtx c1 = ea.id_of(compose(a, generator_perm(n, {GenKind::Cycle123, 0})));
            const Vtx c2 = ea.id_of(compose(a, generator_perm(n, {GenKind::Cycle132, 0})));
            const bool characterized = (y == c1 && z == c2) || (y == c2 && z == c1);
            return tri == characterized;
        };
        if (n <= 4) {
            for (Vtx x = 0; x < ea.vertex_count() && ok; ++x)
                for (Vtx y = x + 1; y < ea.vertex_count() && ok; ++y)
                    for (Vtx z = y + 1; z < ea.vertex_count() && ok; ++z)
                        ok = check_triple(x, y, z) && check_triple(y, x, z) && check_triple(z, y, x);
        } else {
            for (int s = 0; s < 5000 && ok; ++s) {
                const Vtx x = static_cast<Vtx>(rng.below(ea.vertex_count()));
                Vtx y = static_cast<Vtx>(rng.below(ea.vertex_count()));
                Vtx z = static_cast<Vtx>(rng.below(ea.vertex_count()));
                if (x == y || y == z || x == z) continue;
                ok = check_triple(x, y, z);
            }
            // Also drive the positive direction explicitly.
            const Vtx probe = std::min<Vtx>(200, ea.vertex_count());
            for (Vtx x = 0; x < probe && ok; ++x) {
                const Permutation a = ea.perm_of(x);
                const Vtx c1 = ea.id_of(compose(a, generator_perm(n, {GenKind::Cycle123, 0})));
                const Vtx c2 = ea.id_of(compose(a, generator_perm(n, {GenKind::Cycle132, 0})));
                ok = is_triangle(ea, x, c1, c2);
            }
        }
        rep.add("triangle characterization", ok);
    }

    // Cluster structure for n >= 4.
    if (n >= 4) {
        bool cross_ok = true;
        for (int m = 4; m <= n && cross_ok; ++m)
            for (int i = 1; i <= n && cross_ok; ++i)
                for (int j = 1; j <= n && cross_ok; ++j)
                    if (i != j) cross_ok = cross_edges(ea, m, i, j).size() == factorial(n - 2);
        rep.add("cross-edge counts are (n-2)!", cross_ok);

        bool ord_ok = true;
        for (Vtx v = 0; v < ea.vertex_count() && ord_ok; ++v) {
            const auto m = ordered_neighbors(ea, v, n);
            ord_ok = m.size() == static_cast<size_t>(n - 1);
        }
        rep.add("ordered neighbors form a bijection", ord_ok);

        // Deletion connectivity: B = {n-2 neighbors of x, parity neighbor, one
        // of its neighbors}; EA \ B stays connected.
        {
            bool ok = true;
            for (int s = 0; s < opts.deletion_samples && ok; ++s) {
                const Vtx x = static_cast<Vtx>(rng.below(ea.vertex_count()));
                const Vtx xt = parity_neighbor(ea, x);
                std::vector<Vtx> part_nbrs;
                for (size_t g = 1; g < ea.generators().size(); ++g) part_nbrs.push_back(ea.step(x, g));
                // drop one in-part neighbor at random, delete the other n-2
                const size_t keep = rng.below(part_nbrs.size());
                SubgraphView view(ea);
                for (size_t idx = 0; idx < part_nbrs.size(); ++idx)
                    if (idx != keep) view.remove(part_nbrs[idx]);
                view.remove(xt);
                std::vector<Vtx> cands;  // v: any neighbor of the parity neighbor other than x
                for (size_t g = 0; g < ea.generators().size(); ++g) {
                    const Vtx u = ea.step(xt, g);
                    if (u != x) cands.push_back(u);
                }
                view.remove(cands[rng.below(cands.size())]);
                ok = view_connected(view);
            }
            rep.add("deletion connectivity lemma", ok);
        }

        // Cluster-union connectivity: kappa(H) >= n-2. Exhaustive pairs at
        // n = 4, all pairs at the top position for n = 5.
        {
            bool ok = true;
            const int m = n;
            for (int i = 1; i <= n && ok; ++i) {
                for (int j = i + 1; j <= n && ok; ++j) {
                    const auto view = clusters_view(ea, m, {i, j});
                    ok = vertex_connectivity(view) >= n - 2;
                }
            }
            // one triple union as well
            if (ok) ok = vertex_connectivity(clusters_view(ea, m, {1, 2, 3})) >= n - 2;
            rep.add("cluster-union connectivity >= n-2", ok);
        }
    }

    // Whitney/Menger: kappa(EA) = n, kappa(AN) = n-1 by flow.
    {
        bool ok = true;
        const SubgraphView view_ea = full_view(ea);
        if (n <= 4) {
            ok = vertex_connectivity(view_ea) == n && vertex_connectivity(full_view(an)) == n - 1;
        } else {
            const auto view_an = full_view(an);
            for (int s = 0; s < opts.kappa_pair_samples && ok; ++s) {
                const Vtx x = static_cast<Vtx>(rng.below(ea.vertex_count()));
                const Vtx y = static_cast<Vtx>(rng.below(ea.vertex_count()));
                if (x == y || ea.adjacent(x, y)) continue;
                ok = min_vertex_cut(view_ea, x, y).size() == static_cast<size_t>(n);
            }
            for (int s = 0; s < opts.kappa_pair_samples && ok; ++s) {
                const Vtx x = static_cast<Vtx>(rng.below(an.vertex_count()));
                const Vtx y = static_cast<Vtx>(rng.below(an.vertex_count()));
                if (x == y || an.adjacent(x, y)) continue;
                ok = min_vertex_cut(view_an, x, y).size() == static_cast<size_t>(n - 1);
            }
        }
        rep.add("kappa(EA)=n and kappa(AN)=n-1 by flow", ok);
    }

    return rep;
}

}  // namespace godan
