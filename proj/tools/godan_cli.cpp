// Command-line front door: generate and export the graphs, build and verify
// IDSTs, run the exact oracles, sweep subset families, and run the
// acceptance suite.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "godan/acceptance.hpp"
#include "godan/connectivity.hpp"
#include "godan/idst.hpp"
#include "godan/io.hpp"
#include "godan/packing.hpp"
#include "godan/rng.hpp"
#include "godan/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

std::string default_out_dir() {
    const char* env = std::getenv("GODAN_OUT_DIR");
    return env ? std::string(env) : std::string();
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return &std::cout;
    std::string full = path;
    const std::string dir = default_out_dir();
    if (!dir.empty() && path.find('/') == std::string::npos) full = dir + "/" + path;
    file.open(full);
    if (!file) throw std::runtime_error("cannot open output path: " + full);
    return &file;
}

std::vector<godan::Vtx> parse_subset(const godan::CayleyGraph& g, const std::string& s) {
    std::vector<godan::Vtx> out;
    size_t pos = 0;
    // comma-separated one-line strings; commas inside n >= 10 forms need the
    // semicolon separator instead
    const char sep = (s.find(';') != std::string::npos) ? ';' : ',';
    while (pos <= s.size()) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        if (!tok.empty()) out.push_back(g.id_of(godan::parse_permutation(tok)));
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace godan;
    CLI::App app{"godan graphs, IDST construction and exact oracles"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "export a graph as JSON or DOT");
    int gen_n = 3;
    int gen_m = 0;
    std::string gen_format = "json", gen_out, gen_kind = "ea";
    gen->add_option("--n", gen_n, "dimension (>= 3)")->required();
    gen->add_option("--m", gen_m, "cluster position for DOT grouping (default n)");
    gen->add_option("--format", gen_format)->check(CLI::IsMember({"json", "dot"}));
    gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"ea", "an"}));
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // --- idst ---
    auto* idst = app.add_subcommand("idst", "build n-1 IDSTs for a 4-set");
    int idst_n = 4;
    std::string idst_s, idst_out, idst_format = "json";
    bool idst_no_fallback = false;
    idst->add_option("--n", idst_n)->required();
    idst->add_option("--s", idst_s, "four comma-separated one-line strings")->required();
    idst->add_option("--format", idst_format)->check(CLI::IsMember({"json", "dot"}));
    idst->add_option("--out", idst_out);
    idst->add_flag("--no-fallback-search", idst_no_fallback,
                   "fail instead of retrying a failed branch by exact packing");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "build IDSTs over a family of 4-sets");
    int sweep_n = 4, sweep_sample = 0, sweep_jobs = 0;
    uint64_t sweep_seed = 1;
    bool sweep_exhaustive = false, sweep_fallback = false, sweep_timing = false;
    std::string sweep_out, sweep_hist;
    sweep->add_option("--n", sweep_n)->required();
    sweep->add_flag("--exhaustive", sweep_exhaustive, "all C(n!,4) subsets (n <= 4)");
    sweep->add_option("--sample", sweep_sample, "number of random subsets");
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--jobs", sweep_jobs);
    sweep->add_option("--out", sweep_out, "CSV output path");
    sweep->add_option("--hist", sweep_hist, "case histogram output path");
    sweep->add_flag("--fallback-search", sweep_fallback);
    sweep->add_flag("--timing", sweep_timing, "record real per-subset milliseconds");

    // --- oracle ---
    auto* oracle = app.add_subcommand("oracle", "exact generalized connectivity");
    int or_n = 3, or_k = 4, or_sample = 0;
    uint64_t or_seed = 1, or_budget = 0;
    bool or_exhaustive = false;
    std::string or_kind = "ea", or_out;
    oracle->add_option("--n", or_n)->required();
    oracle->add_option("--k", or_k)->required();
    oracle->add_flag("--exhaustive", or_exhaustive);
    oracle->add_option("--sample", or_sample);
    oracle->add_option("--seed", or_seed);
    oracle->add_option("--budget", or_budget,
                       "search-node budget per subset (default: 50M exhaustive, 1M sampled)");
    oracle->add_option("--kind", or_kind)->check(CLI::IsMember({"ea", "an"}));
    oracle->add_option("--out", or_out);

    // --- accept ---
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    int acc_jobs = 0;
    uint64_t acc_seed = 20240601;
    accept->add_option("--jobs", acc_jobs);
    accept->add_option("--seed", acc_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_n < 3) throw CLI::ValidationError("--n", "dimension must be >= 3");
            const CayleyGraph& g = (gen_kind == "ea") ? CayleyGraph::godan(gen_n)
                                                      : CayleyGraph::alt_network(gen_n);
            std::ofstream file;
            std::ostream* os = open_out(gen_out, file);
            if (gen_format == "json")
                (*os) << graph_to_json(g).dump(2) << "\n";
            else
                (*os) << graph_to_dot(g, gen_m == 0 ? gen_n : gen_m);
            return kExitPass;
        }

        if (idst->parsed()) {
            if (idst_n < 3) throw CLI::ValidationError("--n", "dimension must be >= 3");
            const CayleyGraph& g = CayleyGraph::godan(idst_n);
            const auto S = parse_subset(g, idst_s);
            if (S.size() != 4) throw CLI::ValidationError("--s", "exactly four vertices required");
            BuildOptions opts;
            opts.fallback_search = !idst_no_fallback;  // user mode retries by default
            const auto ts = build_idsts(g, S, opts);
            const auto rep = verify_idst(g, ts.trees, ts.S);
            std::ofstream file;
            std::ostream* os = open_out(idst_out, file);
            if (idst_format == "json") {
                auto j = treeset_to_json(ts, g);
                j["verification"] = report_to_json(rep);
                (*os) << j.dump(2) << "\n";
            } else {
                (*os) << treeset_to_dot(ts, g);
            }
            return rep.overall() ? kExitPass : kExitVerifyFail;
        }

        if (sweep->parsed()) {
            if (sweep_n < 3) throw CLI::ValidationError("--n", "dimension must be >= 3");
            if (sweep_exhaustive == (sweep_sample > 0))
                throw CLI::ValidationError("--sample", "choose exactly one of --exhaustive/--sample");
            if (sweep_exhaustive && sweep_n > 4)
                throw CLI::ValidationError("--exhaustive", "exhaustive sweeps are limited to n <= 4");
            const CayleyGraph& g = CayleyGraph::godan(sweep_n);

            std::vector<std::vector<Vtx>> subsets;
            if (sweep_exhaustive) {
                std::vector<int> idx = {0, 1, 2, 3};
                const int V = static_cast<int>(g.vertex_count());
                while (true) {
                    subsets.push_back({static_cast<Vtx>(idx[0]), static_cast<Vtx>(idx[1]),
                                       static_cast<Vtx>(idx[2]), static_cast<Vtx>(idx[3])});
                    int pos = 3;
                    while (pos >= 0 && idx[static_cast<size_t>(pos)] == V - 4 + pos) --pos;
                    if (pos < 0) break;
                    ++idx[static_cast<size_t>(pos)];
                    for (int i = pos + 1; i < 4; ++i)
                        idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
                }
            } else {
                Rng rng(sweep_seed);
                for (int i = 0; i < sweep_sample; ++i) {
                    std::vector<Vtx> S;
                    for (uint64_t v : rng.sample_distinct(g.vertex_count(), 4))
                        S.push_back(static_cast<Vtx>(v));
                    subsets.push_back(std::move(S));
                }
            }

            BuildOptions opts;
            opts.fallback_search = sweep_fallback;
            std::vector<std::string> rows(subsets.size());
            std::vector<std::string> branch(subsets.size());
            std::atomic<size_t> next{0};
            std::atomic<size_t> failures{0};
            const int jobs =
                sweep_jobs > 0 ? sweep_jobs
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
            auto worker = [&]() {
                while (true) {
                    const size_t i = next.fetch_add(1);
                    if (i >= subsets.size()) return;
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        const auto ts = build_idsts(g, subsets[i], opts);
                        const long ms =
                            sweep_timing
                                ? std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count()
                                : 0;
                        rows[i] = csv_row(g, ts, true, ms);
                        branch[i] = ts.tag.branch_key();
                    } catch (const std::exception& e) {
                        SteinerTreeSet empty;
                        empty.n = sweep_n;
                        empty.S = subsets[i];
                        rows[i] = csv_row(g, empty, false, 0);
                        failures.fetch_add(1);
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();

            std::ofstream file;
            std::ostream* os = open_out(sweep_out, file);
            (*os) << "# seed=" << (sweep_exhaustive ? 0 : sweep_seed) << "\n" << csv_header() << "\n";
            for (const auto& row : rows) (*os) << row << "\n";

            std::map<std::string, int> hist;
            for (const auto& b : branch)
                if (!b.empty()) ++hist[b];
            std::ofstream hist_file;
            std::ostream* hos = sweep_hist.empty() ? &std::cerr : open_out(sweep_hist, hist_file);
            for (const auto& [k, c] : hist) (*hos) << k << " " << c << "\n";
            return failures.load() == 0 ? kExitPass : kExitVerifyFail;
        }

        if (oracle->parsed()) {
            if (or_n < 3) throw CLI::ValidationError("--n", "dimension must be >= 3");
            if (or_exhaustive == (or_sample > 0))
                throw CLI::ValidationError("--sample", "choose exactly one of --exhaustive/--sample");
            const CayleyGraph& g =
                (or_kind == "ea") ? CayleyGraph::godan(or_n) : CayleyGraph::alt_network(or_n);
            KappaKPolicy policy;
            policy.exhaustive = or_exhaustive;
            policy.samples = or_sample;
            policy.seed = or_seed;
            PackOptions pack;
            pack.node_budget = or_budget ? or_budget : (or_exhaustive ? 50'000'000 : 1'000'000);
            const auto res = kappa_k_exact(g, or_k, policy, pack);
            nlohmann::json j;
            j["graph"] = or_kind;
            j["n"] = or_n;
            j["k"] = or_k;
            j["value"] = res.value;
            j["exact"] = res.exact;
            j["seed"] = res.seed;
            j["subsets"] = res.subsets;
            if (!res.min_S.empty()) j["min_S"] = subset_key(g, res.min_S);
            std::ofstream file;
            std::ostream* os = open_out(or_out, file);
            (*os) << j.dump(2) << "\n";
            return kExitPass;
        }

        if (accept->parsed()) {
            AcceptanceOptions opts;
            opts.jobs = acc_jobs;
            opts.seed = acc_seed;
            const auto results = run_acceptance(opts, &std::cout);
            return all_pass(results) ? kExitPass : kExitVerifyFail;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
