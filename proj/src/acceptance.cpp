#include "godan/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "godan/connectivity.hpp"
#include "godan/idst.hpp"
#include "godan/io.hpp"
#include "godan/packing.hpp"
#include "godan/rng.hpp"
#include "godan/verify.hpp"

namespace godan {

namespace {

int resolved_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic fan-out: results land in a pre-sized vector by index.
template <typename Fn>
void parallel_for(size_t count, int jobs, Fn&& fn) {
    jobs = std::min<size_t>(static_cast<size_t>(resolved_jobs(jobs)), count == 0 ? 1 : count);
    if (jobs <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&]() {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& w : workers) w.join();
}

std::vector<std::vector<Vtx>> all_k_subsets(Vtx universe, int k) {
    std::vector<std::vector<Vtx>> out;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        std::vector<Vtx> S;
        for (int v : idx) S.push_back(static_cast<Vtx>(v));
        out.push_back(std::move(S));
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == static_cast<int>(universe) - k + pos)
            --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    return out;
}

// Random 4-subsets used by the big sweeps; seed recorded by the caller.
std::vector<std::vector<Vtx>> sampled_subsets(Vtx universe, int k, int count, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<Vtx>> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<Vtx> S;
        for (uint64_t v : rng.sample_distinct(universe, static_cast<size_t>(k)))
            S.push_back(static_cast<Vtx>(v));
        out.push_back(std::move(S));
    }
    return out;
}

struct SweepOutcome {
    size_t failures = 0;
    std::string first_error;
    std::map<std::string, int> histogram;
};

SweepOutcome run_builder_sweep(const CayleyGraph& g, const std::vector<std::vector<Vtx>>& subsets,
                               int jobs) {
    std::vector<std::string> branch(subsets.size());
    std::vector<std::string> errors(subsets.size());
    parallel_for(subsets.size(), jobs, [&](size_t i) {
        try {
            const auto ts = build_idsts(g, subsets[i]);
            if (ts.trees.size() != static_cast<size_t>(g.n() - 1))
                errors[i] = "wrong tree count";
            else
                branch[i] = ts.tag.branch_key();
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    SweepOutcome out;
    for (size_t i = 0; i < subsets.size(); ++i) {
        if (!errors[i].empty()) {
            ++out.failures;
            if (out.first_error.empty())
                out.first_error = subset_key(g, subsets[i]) + ": " + errors[i];
        } else {
            ++out.histogram[branch[i]];
        }
    }
    return out;
}

// A 4-set that provably reaches the n = 6 claim-2 branch: the identity, one
// table partner, and two more vertices keeping every position-m split trivial.
std::vector<std::vector<Vtx>> claim2_instances(const CayleyGraph& g) {
    const int n = g.n();
    std::vector<std::vector<Vtx>> out;
    const Vtx x = g.id_of(Permutation::identity(n));
    auto distinct_everywhere = [&](const std::vector<Vtx>& vs) {
        for (int m = 4; m <= n; ++m)
            for (size_t i = 0; i < vs.size(); ++i)
                for (size_t j = i + 1; j < vs.size(); ++j)
                    if (cluster_of(g, vs[i], m) == cluster_of(g, vs[j], m)) return false;
        return true;
    };
    for (const Permutation& yp : case1_y_candidates(n)) {
        const Vtx y = g.id_of(yp);
        int found = 0;
        for (Vtx z = 0; z < g.vertex_count() && found < 2; ++z) {
            if (z == x || z == y) continue;
            if (!distinct_everywhere({x, y, z})) continue;
            for (Vtx w = z + 1; w < g.vertex_count(); ++w) {
                if (w == x || w == y) continue;
                if (!distinct_everywhere({x, y, z, w})) continue;
                out.push_back({x, y, z, w});
                ++found;
                break;
            }
        }
    }
    return out;
}

using Clock = std::chrono::steady_clock;

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log) {
    std::vector<CriterionResult> results;
    const int jobs = resolved_jobs(opts.jobs);

    auto run = [&](int id, const std::string& name, auto&& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        const auto start = Clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.millis =
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        if (log)
            (*log) << "[accept] criterion " << id << (r.pass ? " PASS " : " FAIL ") << name
                   << (r.detail.empty() ? "" : " -- " + r.detail) << " (" << r.millis << " ms)"
                   << std::endl;
        results.push_back(std::move(r));
    };

    run(1, "kappa_4(EA_3) = 2 exactly, builder covers all 15 subsets", [&](CriterionResult& r) {
        const CayleyGraph& g = CayleyGraph::godan(3);
        const auto kk = kappa_k_exact(g, 4, {true, 0, 0});
        bool builder_ok = true;
        for (const auto& S : all_k_subsets(g.vertex_count(), 4)) {
            const auto ts = build_idsts(g, S);
            if (ts.trees.size() != 2) builder_ok = false;
        }
        r.pass = kk.exact && kk.value == 2 && builder_ok;
        r.detail = "oracle min = " + std::to_string(kk.value);
    });

    run(2, "builder covers all C(24,4) = 10626 subsets of EA_4", [&](CriterionResult& r) {
        const CayleyGraph& g = CayleyGraph::godan(4);
        const auto subsets = all_k_subsets(g.vertex_count(), 4);
        const auto res = run_builder_sweep(g, subsets, jobs);
        // Branch coverage pinned from the exhaustive run: every construction
        // branch reachable at n = 4 must fire.
        static const char* kExpectedBranches[] = {
            "recurse/base3", "s1111/->s4", "s1111/case1/n4", "s1111/case2", "s211/case1",
            "s211/case2/2.1", "s211/case2/2.2", "s211/case2/2.3.1/t=cw", "s211/case2/2.3.1/t=cz",
            "s211/case2/2.3.2nbr/t=cw", "s211/case2/2.3.2nbr/t=cz", "s22/case1", "s22/case2/nbr",
            "s22/case2/onP", "s3/F1/diff", "s3/F1/diff-cw", "s3/F2/3.1.1", "s3/F2/3.1.2",
            "s3/F2/3.2.1", "s3/F3->ans3/case1", "s3/F3->ans3/case2", "s4/F3->s4",
        };
        std::string missing;
        for (const char* b : kExpectedBranches)
            if (!res.histogram.count(b)) missing += std::string(" ") + b;
        r.pass = subsets.size() == 10626 && res.failures == 0 && missing.empty();
        std::ostringstream os;
        os << subsets.size() << " subsets, " << res.failures << " failures, "
           << res.histogram.size() << " branches";
        if (!missing.empty()) os << "; missing:" << missing;
        if (!res.first_error.empty()) os << "; first: " << res.first_error;
        r.detail = os.str();
    });

    run(3, "some S in EA_4 has kappa_S_exact = 3 (no 4th tree)", [&](CriterionResult& r) {
        const CayleyGraph& g = CayleyGraph::godan(4);
        const auto view = full_view(g);
        for (const auto& S : all_k_subsets(g.vertex_count(), 4)) {
            const auto pr = kappa_S_exact(view, S, 3);
            if (pr.status == PackStatus::Exact && pr.max_t == 3) {
                r.pass = true;
                r.detail = "S = {" + subset_key(g, S) + "}, nodes = " + std::to_string(pr.explored);
                return;
            }
        }
        r.pass = false;
    });

    run(4, "builder: 10000 sampled subsets of EA_5 yield 4 verified IDSTs",
        [&](CriterionResult& r) {
            const CayleyGraph& g = CayleyGraph::godan(5);
            const auto subsets = sampled_subsets(g.vertex_count(), 4, 10000, opts.seed);
            const auto res = run_builder_sweep(g, subsets, jobs);
            r.pass = res.failures == 0;
            std::ostringstream os;
            os << "seed " << opts.seed << ", " << res.failures << " failures, "
               << res.histogram.size() << " branches";
            if (!res.first_error.empty()) os << "; first: " << res.first_error;
            r.detail = os.str();
        });

    run(5, "builder: 1000 sampled subsets of EA_6 plus claim-2 instances", [&](CriterionResult& r) {
        const CayleyGraph& g = CayleyGraph::godan(6);
        auto subsets = sampled_subsets(g.vertex_count(), 4, 1000, opts.seed + 1);
        const auto forced = claim2_instances(g);
        subsets.insert(subsets.end(), forced.begin(), forced.end());
        const auto res = run_builder_sweep(g, subsets, jobs);
        int claim2 = 0;
        for (const auto& [k, c] : res.histogram)
            if (k.find("claim2") != std::string::npos) claim2 += c;
        r.pass = res.failures == 0 && claim2 >= 1;
        std::ostringstream os;
        os << subsets.size() << " subsets (" << forced.size() << " forced), " << res.failures
           << " failures, claim2 hits = " << claim2;
        if (!res.first_error.empty()) os << "; first: " << res.first_error;
        r.detail = os.str();
    });

    run(6, "structural suite passes for n in {3,4,5}", [&](CriterionResult& r) {
        std::string fail;
        for (int n = 3; n <= 5; ++n) {
            const auto rep = structural_suite(n);
            if (!rep.overall()) fail += " n=" + std::to_string(n) + ": " + rep.first_failure();
        }
        r.pass = fail.empty();
        r.detail = fail.empty() ? "all checks green" : fail;
    });

    run(7, "kappa_4(AN_4) = 2 by exhaustive oracle", [&](CriterionResult& r) {
        const auto kk = kappa_k_exact(CayleyGraph::alt_network(4), 4, {true, 0, 0});
        r.pass = kk.exact && kk.value == 2;
        r.detail = "value = " + std::to_string(kk.value);
    });

    run(8, "kappa_3(EA_3) = 2 and kappa_3(EA_4) = 3 by exhaustive oracle",
        [&](CriterionResult& r) {
            const auto k3 = kappa_k_exact(CayleyGraph::godan(3), 3, {true, 0, 0});
            const auto k4 = kappa_k_exact(CayleyGraph::godan(4), 3, {true, 0, 0});
            r.pass = k3.exact && k3.value == 2 && k4.exact && k4.value == 3;
            r.detail = "kappa_3(EA_3) = " + std::to_string(k3.value) +
                       ", kappa_3(EA_4) = " + std::to_string(k4.value);
        });

    run(9, "whitney_kappa equals vertex_connectivity on the small graphs",
        [&](CriterionResult& r) {
            struct Item {
                const CayleyGraph* g;
                int expect;
                const char* name;
            };
            const std::vector<Item> items = {
                {&CayleyGraph::godan(3), 3, "EA_3"},       {&CayleyGraph::godan(4), 4, "EA_4"},
                {&CayleyGraph::alt_network(3), 2, "AN_3"}, {&CayleyGraph::alt_network(4), 3, "AN_4"},
                {&CayleyGraph::alt_network(5), 4, "AN_5"},
            };
            std::string fail;
            for (const auto& it : items) {
                const auto view = full_view(*it.g);
                const int w = whitney_kappa(view);
                const int k = vertex_connectivity(view);
                if (w != k || w != it.expect)
                    fail += std::string(" ") + it.name + ": whitney=" + std::to_string(w) +
                            " kappa=" + std::to_string(k);
            }
            r.pass = fail.empty();
            r.detail = fail.empty() ? "all equal" : fail;
        });

    run(10, "property suite: negative controls, determinism, oracle agreement",
        [&](CriterionResult& r) {
            std::string fail;
            const CayleyGraph& g3 = CayleyGraph::godan(3);
            const CayleyGraph& g4 = CayleyGraph::godan(4);

            // Verifier negative controls.
            {
                const std::vector<Vtx> S = {0, 1, 2, 3};
                const auto ts = build_idsts(g4, S);
                auto bad = ts.trees;
                bad.push_back(bad.front());  // duplicated tree shares edges
                if (verify_idst(g4, bad, S).overall()) fail += " dup-tree-undetected";
                auto drop = ts.trees;
                drop[0] = without_vertex(drop[0], S[0]);  // lose a terminal
                if (verify_stree(g4, drop[0], S).overall()) fail += " missing-terminal-undetected";
                const auto corrupted = g4.with_edge_removed(0, g4.step(0, 0));
                EdgeList fake;
                add_edge(fake, 0, g4.step(0, 0));
                if (verify_stree(corrupted, fake, {0, g4.step(0, 0)}).overall())
                    fail += " removed-edge-undetected";
            }
            // Determinism: identical seeds give identical sweep bytes.
            {
                auto render = [&]() {
                    std::ostringstream os;
                    os << csv_header() << "\n";
                    for (const auto& S : sampled_subsets(g4.vertex_count(), 4, 300, 99)) {
                        const auto ts = build_idsts(g4, S);
                        os << csv_row(g4, ts, true, 0) << "\n";
                    }
                    return os.str();
                };
                if (render() != render()) fail += " sweep-not-deterministic";
            }
            // Oracle/builder agreement: n = 3 exhaustively, n = 4 sampled.
            {
                const auto view3 = full_view(g3);
                int min3 = 1000;
                for (const auto& S : all_k_subsets(g3.vertex_count(), 4)) {
                    const auto pr = kappa_S_exact(view3, S, 2);
                    min3 = std::min(min3, pr.max_t);
                    if (pr.max_t < 2 || build_idsts(g3, S).trees.size() != 2) {
                        fail += " n3-agreement";
                        break;
                    }
                }
                if (min3 != 2) fail += " n3-min";
                const auto view4 = full_view(g4);
                for (const auto& S : sampled_subsets(g4.vertex_count(), 4, 500, opts.seed + 7)) {
                    if (!pack_idst(view4, S, 3)) {
                        fail += " n4-oracle-lower";
                        break;
                    }
                    if (build_idsts(g4, S).trees.size() != 3) {
                        fail += " n4-builder";
                        break;
                    }
                }
            }
            // Translation soundness on a sample.
            {
                Rng rng(opts.seed + 11);
                for (int rep = 0; rep < 20; ++rep) {
                    std::vector<Vtx> S;
                    for (uint64_t v : rng.sample_distinct(g4.vertex_count(), 4))
                        S.push_back(static_cast<Vtx>(v));
                    const Permutation sigma =
                        g4.perm_of(static_cast<Vtx>(rng.below(g4.vertex_count())));
                    const auto translated = left_translate_vertices(g4, sigma, S);
                    const auto ts = build_idsts(g4, translated);
                    std::vector<EdgeList> back;
                    const Permutation inv = inverse(sigma);
                    for (const auto& t : ts.trees)
                        back.push_back(left_translate_edges(g4, inv, t));
                    std::vector<Vtx> S_sorted = S;
                    std::sort(S_sorted.begin(), S_sorted.end());
                    if (!verify_idst(g4, back, S_sorted).overall()) {
                        fail += " translation";
                        break;
                    }
                }
            }
            r.pass = fail.empty();
            r.detail = fail.empty() ? "all properties hold" : fail;
        });

    return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace godan
