#include "godan/io.hpp"

#include <algorithm>
#include <sstream>

namespace godan {

using nlohmann::json;

nlohmann::json graph_to_json(const CayleyGraph& g) {
    json j;
    j["n"] = g.n();
    std::vector<std::string> verts;
    for (Vtx v = 0; v < g.vertex_count(); ++v) verts.push_back(g.label(v));
    std::sort(verts.begin(), verts.end());
    j["vertices"] = verts;

    std::vector<std::pair<std::string, std::string>> edges;
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        for (size_t k = 0; k < g.generators().size(); ++k) {
            const Vtx u = g.step(v, k);
            if (u <= v) continue;
            std::string a = g.label(v), b = g.label(u);
            if (b < a) std::swap(a, b);
            edges.emplace_back(std::move(a), std::move(b));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    json je = json::array();
    for (auto& [a, b] : edges) je.push_back({a, b});
    j["edges"] = std::move(je);
    return j;
}

std::string graph_to_dot(const CayleyGraph& g, int m) {
    std::ostringstream os;
    os << "graph G {\n";
    if (m >= 4 && m <= g.n()) {
        for (int i = 1; i <= g.n(); ++i) {
            os << "  subgraph cluster_" << i << " {\n";
            os << "    label=\"pos" << m << ":" << i << "\";\n";
            for (Vtx v = 0; v < g.vertex_count(); ++v)
                if (cluster_of(g, v, m) == i) os << "    \"" << g.label(v) << "\";\n";
            os << "  }\n";
        }
    } else {
        for (Vtx v = 0; v < g.vertex_count(); ++v) os << "  \"" << g.label(v) << "\";\n";
    }
    for (Vtx v = 0; v < g.vertex_count(); ++v) {
        for (size_t k = 0; k < g.generators().size(); ++k) {
            const Vtx u = g.step(v, k);
            if (u > v) os << "  \"" << g.label(v) << "\" -- \"" << g.label(u) << "\";\n";
        }
    }
    os << "}\n";
    return os.str();
}

nlohmann::json treeset_to_json(const SteinerTreeSet& ts, const CayleyGraph& g) {
    json j;
    j["n"] = ts.n;
    std::vector<std::string> s;
    for (Vtx v : ts.S) s.push_back(g.label(v));
    j["S"] = s;
    j["case"] = ts.tag.to_string();
    json trees = json::array();
    for (const EdgeList& t : ts.trees) {
        EdgeList sorted = t;
        normalize(sorted);
        json edges = json::array();
        for (const Edge& e : sorted) {
            std::string a = g.label(e.a), b = g.label(e.b);
            if (b < a) std::swap(a, b);
            edges.push_back({a, b});
        }
        trees.push_back(std::move(edges));
    }
    j["trees"] = std::move(trees);
    return j;
}

SteinerTreeSet treeset_from_json(const nlohmann::json& j, const CayleyGraph& g) {
    SteinerTreeSet ts;
    ts.n = j.at("n").get<int>();
    if (ts.n != g.n()) throw std::invalid_argument("tree set belongs to a different dimension");
    for (const auto& s : j.at("S")) ts.S.push_back(g.id_of(parse_permutation(s.get<std::string>())));
    ts.tag.lemma = j.value("case", "");
    for (const auto& jt : j.at("trees")) {
        EdgeList t;
        for (const auto& je : jt) {
            const Vtx a = g.id_of(parse_permutation(je.at(0).get<std::string>()));
            const Vtx b = g.id_of(parse_permutation(je.at(1).get<std::string>()));
            add_edge(t, a, b);
        }
        normalize(t);
        ts.trees.push_back(std::move(t));
    }
    return ts;
}

std::string treeset_to_dot(const SteinerTreeSet& ts, const CayleyGraph& g) {
    static const char* colors[] = {"black", "red",    "blue",  "darkgreen",
                                   "orange", "purple", "brown", "cyan4"};
    std::ostringstream os;
    os << "graph IDST {\n";
    for (Vtx v : ts.S) os << "  \"" << g.label(v) << "\" [shape=box];\n";
    for (size_t i = 0; i < ts.trees.size(); ++i) {
        const char* color = colors[i % (sizeof(colors) / sizeof(colors[0]))];
        for (const Edge& e : ts.trees[i])
            os << "  \"" << g.label(e.a) << "\" -- \"" << g.label(e.b) << "\" [color=" << color
               << "];\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::json report_to_json(const VerificationReport& rep) {
    json j;
    j["subject"] = rep.subject;
    j["overall"] = rep.overall();
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    return j;
}

std::string subset_key(const CayleyGraph& g, const std::vector<Vtx>& S) {
    std::string out;
    for (Vtx v : S) {
        if (!out.empty()) out += ";";
        out += g.label(v);
    }
    return out;
}

std::string csv_header() { return "n,S,trees,case_tag,verify,millis"; }

std::string csv_row(const CayleyGraph& g, const SteinerTreeSet& ts, bool verified, long millis) {
    std::ostringstream os;
    os << ts.n << "," << subset_key(g, ts.S) << "," << ts.trees.size() << ","
       << ts.tag.to_string() << "," << (verified ? "pass" : "fail") << "," << millis;
    return os.str();
}

}  // namespace godan
