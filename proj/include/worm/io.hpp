#pragma once

// External formats use 1-based vertex ids; everything internal is 0-based.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "worm/constructions.hpp"
#include "worm/graph.hpp"
#include "worm/mixed_hypergraph.hpp"
#include "worm/solver.hpp"

namespace worm {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

class parse_error : public input_error {
public:
    parse_error(int line, const std::string& what)
        : input_error("line " + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline bool blank(const std::string& line)
{
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

inline std::string first_token(const std::string& line)
{
    std::istringstream iss(line);
    std::string t;
    iss >> t;
    return t;
}

// Reads exactly `count` integers and nothing else.
inline std::vector<long long> read_ints(std::istringstream& iss, int count, int ln, const char* what)
{
    std::vector<long long> out;
    long long x;
    for (int i = 0; i < count; ++i) {
        if (!(iss >> x))
            throw parse_error(ln, std::string("malformed ") + what);
        out.push_back(x);
    }
    std::string extra;
    if (iss >> extra)
        throw parse_error(ln, std::string("trailing tokens in ") + what);
    return out;
}

} // namespace detail

/// DIMACS .col: `c` comments, one `p edge n m` header, then m `e u v` lines.
inline Graph parse_dimacs(std::istream& in)
{
    std::string line;
    int ln = 0;
    bool header = false;
    long long n = 0, m = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++ln;
        if (detail::blank(line))
            continue;
        std::istringstream iss(line);
        std::string kind;
        iss >> kind;
        if (kind == "c")
            continue;
        if (kind == "p") {
            if (header)
                throw parse_error(ln, "duplicate problem line");
            std::string fmt;
            iss >> fmt;
            if (fmt != "edge" && fmt != "col")
                throw parse_error(ln, "expected 'p edge n m'");
            auto v = detail::read_ints(iss, 2, ln, "problem line");
            n = v[0];
            m = v[1];
            if (n < 0 || m < 0)
                throw parse_error(ln, "negative size in problem line");
            header = true;
        } else if (kind == "e") {
            if (!header)
                throw parse_error(ln, "edge before problem line");
            auto v = detail::read_ints(iss, 2, ln, "edge line");
            if (v[0] < 1 || v[1] < 1 || v[0] > n || v[1] > n)
                throw parse_error(ln, "vertex out of range");
            if (v[0] == v[1])
                throw parse_error(ln, "self-loop");
            Vertex a = static_cast<Vertex>(v[0] - 1), b = static_cast<Vertex>(v[1] - 1);
            if (!seen.emplace(std::min(a, b), std::max(a, b)).second)
                throw parse_error(ln, "duplicate edge");
            edges.emplace_back(a, b);
        } else {
            throw parse_error(ln, "unknown line type '" + kind + "'");
        }
    }
    if (!header)
        throw parse_error(ln, "missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw parse_error(ln, "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(static_cast<int>(n), edges);
}

inline Graph parse_dimacs(const std::string& text)
{
    std::istringstream iss(text);
    return parse_dimacs(iss);
}

inline std::string write_dimacs(const Graph& g)
{
    std::ostringstream os;
    os << "p edge " << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges())
        os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

/// `h n m` header, then m lines of three distinct 1-based vertex ids.
inline ThreeUniformHypergraph parse_hypergraph(std::istream& in)
{
    std::string line;
    int ln = 0;
    bool header = false;
    long long n = 0, m = 0;
    std::vector<std::array<Vertex, 3>> edges;
    std::set<std::array<Vertex, 3>> seen;
    while (std::getline(in, line)) {
        ++ln;
        if (detail::blank(line) || detail::first_token(line) == "c")
            continue;
        std::istringstream iss(line);
        if (!header) {
            std::string kind;
            iss >> kind;
            if (kind != "h")
                throw parse_error(ln, "expected 'h n m'");
            auto v = detail::read_ints(iss, 2, ln, "header");
            n = v[0];
            m = v[1];
            if (n < 0 || m < 0)
                throw parse_error(ln, "negative size in header");
            header = true;
            continue;
        }
        auto v = detail::read_ints(iss, 3, ln, "hyperedge");
        std::array<Vertex, 3> e{};
        for (int i = 0; i < 3; ++i) {
            if (v[i] < 1 || v[i] > n)
                throw parse_error(ln, "vertex out of range");
            e[i] = static_cast<Vertex>(v[i] - 1);
        }
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2])
            throw parse_error(ln, "hyperedge is not a 3-set");
        if (!seen.insert(e).second)
            throw parse_error(ln, "duplicate hyperedge");
        edges.push_back(e);
    }
    if (!header)
        throw parse_error(ln, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw parse_error(ln, "expected " + std::to_string(m) + " hyperedges, found " + std::to_string(edges.size()));
    return ThreeUniformHypergraph(static_cast<int>(n), std::move(edges));
}

inline ThreeUniformHypergraph parse_hypergraph(const std::string& text)
{
    std::istringstream iss(text);
    return parse_hypergraph(iss);
}

inline std::string write_hypergraph(const ThreeUniformHypergraph& h)
{
    std::ostringstream os;
    os << "h " << h.n << ' ' << h.edges.size() << '\n';
    for (const auto& e : h.edges)
        os << e[0] + 1 << ' ' << e[1] + 1 << ' ' << e[2] + 1 << '\n';
    return os.str();
}

/// Whitespace-separated positive colors in vertex order.
inline Coloring parse_coloring(std::istream& in)
{
    std::vector<int> colors;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long long c = 0;
        try {
            c = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || c < 1 || c > std::numeric_limits<int>::max())
            throw input_error("invalid color '" + tok + "' at position " + std::to_string(colors.size() + 1));
        colors.push_back(static_cast<int>(c));
    }
    return Coloring(std::move(colors));
}

inline Coloring parse_coloring(const std::string& text)
{
    std::istringstream iss(text);
    return parse_coloring(iss);
}

inline std::string write_coloring(const Coloring& c)
{
    std::ostringstream os;
    for (int i = 0; i < c.size(); ++i)
        os << (i ? " " : "") << c[i];
    os << '\n';
    return os.str();
}

template <class T, class Parser>
T read_file(const std::string& path, Parser parse)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    return parse(in);
}

// JSON ---------------------------------------------------------------------

using nlohmann::json;

inline json to_json(const Coloring& c) { return c.values(); }

inline json to_json(const SpectrumReport& r)
{
    json j;
    j["colorable"] = r.colorable;
    j["complete"] = r.complete;
    j["w_minus"] = r.w_minus ? json(*r.w_minus) : json(nullptr);
    j["w_plus"] = r.w_plus ? json(*r.w_plus) : json(nullptr);
    j["feasible"] = r.feasible;
    j["gaps"] = r.gaps;
    j["undecided"] = r.undecided;
    json w = json::object();
    for (const auto& [s, c] : r.witnesses)
        w[std::to_string(s)] = to_json(c);
    j["witnesses"] = w;
    return j;
}

/// Restores a spectrum report. When `g` is given every witness must be a
/// WORM coloring of g with exactly its key's number of colors.
inline SpectrumReport spectrum_from_json(const json& j, const Graph* g = nullptr)
{
    SpectrumReport r;
    r.colorable = j.at("colorable").get<bool>();
    r.complete = j.at("complete").get<bool>();
    if (!j.at("w_minus").is_null())
        r.w_minus = j.at("w_minus").get<int>();
    if (!j.at("w_plus").is_null())
        r.w_plus = j.at("w_plus").get<int>();
    r.feasible = j.at("feasible").get<std::vector<int>>();
    r.gaps = j.at("gaps").get<std::vector<int>>();
    r.undecided = j.at("undecided").get<std::vector<int>>();
    for (const auto& [key, val] : j.at("witnesses").items()) {
        int s = std::stoi(key);
        Coloring c(val.get<std::vector<int>>());
        if (g) {
            if (!is_worm_coloring(*g, c) || (g->order() > 0 && c.num_colors() != s))
                throw input_error("witness for s=" + key + " does not validate");
        }
        r.witnesses.emplace(s, std::move(c));
    }
    return r;
}

inline json to_json(const ConstructionTrace& t)
{
    auto tag = [](const Origin& o) {
        json j;
        j["role"] = to_string(o.role);
        if (o.copy >= 0)
            j["copy"] = o.copy;
        if (o.source >= 0)
            j["source"] = o.source + 1;
        if (o.edge >= 0)
            j["edge"] = o.edge + 1;
        if (o.chain >= 0)
            j["chain"] = o.chain + 1;
        if (o.slot >= 0)
            j["slot"] = o.slot + 1;
        return j;
    };
    json j;
    j["vertex_origin"] = json::array();
    for (const auto& o : t.vertex_origin)
        j["vertex_origin"].push_back(tag(o));
    j["identified_pairs"] = json::array();
    for (const auto& id : t.identified_pairs)
        j["identified_pairs"].push_back({{"vertex", id.vertex + 1}, {"absorbed", tag(id.absorbed)}});
    return j;
}

inline json to_json(const Graph& g)
{
    json es = json::array();
    for (auto [u, v] : g.edges())
        es.push_back({u + 1, v + 1});
    return {{"vertices", g.order()}, {"edges", es}};
}

inline Graph graph_from_json(const json& j)
{
    std::vector<Edge> es;
    for (const auto& e : j.at("edges"))
        es.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    return Graph(j.at("vertices").get<int>(), es);
}

enum class BudgetStatus { complete, exceeded };

/// Envelope for every command's output.
struct RunReport {
    std::string command;
    std::string input;
    int vertices = 0;
    std::size_t edges = 0;
    json result = json::object();
    std::optional<double> budget_seconds;
    BudgetStatus budget_status = BudgetStatus::complete;
    std::optional<double> elapsed_ms;
    std::string version = kToolVersion;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline json to_json(const RunReport& r)
{
    json j;
    j["schema"] = kReportSchema;
    j["version"] = r.version;
    j["command"] = r.command;
    j["input"] = {{"path", r.input}, {"vertices", r.vertices}, {"edges", r.edges}};
    j["result"] = r.result;
    j["budget"] = {{"seconds", r.budget_seconds ? json(*r.budget_seconds) : json(nullptr)},
                   {"status", r.budget_status == BudgetStatus::complete ? "complete" : "exceeded"}};
    if (r.elapsed_ms)
        j["elapsed_ms"] = *r.elapsed_ms;
    return j;
}

inline RunReport run_report_from_json(const json& j)
{
    if (j.at("schema").get<int>() != kReportSchema)
        throw input_error("unsupported report schema");
    RunReport r;
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input").at("path").get<std::string>();
    r.vertices = j.at("input").at("vertices").get<int>();
    r.edges = j.at("input").at("edges").get<std::size_t>();
    r.result = j.at("result");
    const auto& b = j.at("budget");
    if (!b.at("seconds").is_null())
        r.budget_seconds = b.at("seconds").get<double>();
    r.budget_status = b.at("status").get<std::string>() == "complete" ? BudgetStatus::complete : BudgetStatus::exceeded;
    if (j.contains("elapsed_ms"))
        r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

/// CSV spectrum: header `s,feasible`, one row per s = 1..n with 1/0/?.
inline std::string spectrum_csv(const SpectrumReport& r, int n)
{
    std::ostringstream os;
    os << "s,feasible\n";
    for (int s = 1; s <= n; ++s) {
        const char* flag = "0";
        if (std::binary_search(r.feasible.begin(), r.feasible.end(), s))
            flag = "1";
        else if (std::binary_search(r.undecided.begin(), r.undecided.end(), s))
            flag = "?";
        os << s << ',' << flag << '\n';
    }
    return os.str();
}

} // namespace worm
