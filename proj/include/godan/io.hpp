#pragma once

#include <string>

#include "godan/graph.hpp"
#include "godan/idst.hpp"
#include "godan/verify.hpp"

#include <json.hpp>

namespace godan {

// {n, vertices:[string], edges:[[string,string]]}, lexicographically sorted.
nlohmann::json graph_to_json(const CayleyGraph& g);

// DOT with one subgraph per position-m cluster (m = 0: flat).
std::string graph_to_dot(const CayleyGraph& g, int m);

// {n, S:[string x4], case:"...", trees:[[[u,v],...]]} with sorted edges.
nlohmann::json treeset_to_json(const SteinerTreeSet& ts, const CayleyGraph& g);
SteinerTreeSet treeset_from_json(const nlohmann::json& j, const CayleyGraph& g);

// One color class per tree.
std::string treeset_to_dot(const SteinerTreeSet& ts, const CayleyGraph& g);

nlohmann::json report_to_json(const VerificationReport& rep);

// Sweep CSV: n,S,trees,case_tag,verify,millis.
std::string csv_header();
std::string csv_row(const CayleyGraph& g, const SteinerTreeSet& ts, bool verified, long millis);

// Permutation list form "a;b;c;d" used in CSV.
std::string subset_key(const CayleyGraph& g, const std::vector<Vtx>& S);

}  // namespace godan
