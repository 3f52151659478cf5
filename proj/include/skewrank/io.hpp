#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "skewrank/engine.hpp"
#include "skewrank/graph.hpp"
#include "skewrank/skew.hpp"

namespace skewrank {

/// Parse the edge-list text format: first content line "n m", then m lines
/// "u v" with 0 <= u < v < n. Blank lines and '#' comments are ignored.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1, m = -1;
    std::vector<Edge> edges;

    auto is_blank = [](const std::string& s) {
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) return false;
        return true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
        std::istringstream ls(line);
        long a, b;
        std::string rest;
        if (!(ls >> a >> b) || (ls >> rest))
            throw ParseError(lineno, "expected two integers");
        if (n < 0) {
            n = a;
            m = b;
            if (n < 0 || m < 0) throw ParseError(lineno, "negative counts in header");
            if (n > Graph::max_vertices) throw TooLarge("graphs are limited to 32 vertices");
            continue;
        }
        if (static_cast<long>(edges.size()) == m)
            throw ParseError(lineno, "more edge lines than the header announced");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw ValidationError("edge endpoint out of range on line " + std::to_string(lineno));
        if (a >= b)
            throw ValidationError("edge endpoints must satisfy u < v on line " +
                                  std::to_string(lineno));
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (n < 0) throw ParseError(lineno + 1, "missing header line");
    if (static_cast<long>(edges.size()) != m)
        throw ParseError(lineno + 1, "fewer edge lines than the header announced");
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("duplicate edge");
    return Graph(static_cast<int>(n), std::move(edges));
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

// ---- JSON serialization ------------------------------------------------

inline nlohmann::json to_json(const SkewMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
        entries.push_back(std::move(row));
    }
    return {{"p", m.field().modulus()}, {"n", m.dim()}, {"entries", std::move(entries)}};
}

/// Rebuild a SkewMatrix from {p, n, entries}; the support graph is the
/// nonzero pattern.
inline SkewMatrix skew_matrix_from_json(const nlohmann::json& j) {
    const long p = j.at("p").get<long>();
    const int n = j.at("n").get<int>();
    PrimeField field(p);
    std::vector<long> a(static_cast<size_t>(n) * n, 0);
    std::vector<Edge> edges;
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != n) throw ValidationError("entries has wrong row count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ValidationError("entries has wrong column count");
        for (int jj = 0; jj < n; ++jj) a[i * n + jj] = rows[i][jj].get<long>();
    }
    for (int i = 0; i < n; ++i)
        for (int jj = i + 1; jj < n; ++jj)
            if (a[i * n + jj] != 0) edges.emplace_back(i, jj);
    return SkewMatrix(field, Graph(n, std::move(edges)), std::move(a));
}

inline nlohmann::json to_json(const TraceEntry& t) {
    nlohmann::json j{{"rule", t.rule}, {"subgraph", t.subgraph}, {"depth", t.depth}};
    if (t.lower == t.upper)
        j["value"] = t.lower;
    else
        j["value"] = nlohmann::json::array({t.lower, t.upper});
    return j;
}

inline nlohmann::json to_json(const RankResult& r) {
    nlohmann::json j{{"lower", r.lower}, {"upper", r.upper}};
    if (r.exact) j["exact"] = *r.exact;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : r.trace) trace.push_back(to_json(t));
    j["trace"] = std::move(trace);
    if (r.certificate) j["certificate"] = to_json(r.certificate->matrix);
    return j;
}

}  // namespace skewrank
