#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "worm/constructions.hpp"
#include "worm/fast_paths.hpp"
#include "worm/io.hpp"
#include "worm/solver.hpp"

namespace worm {

enum ExitCode : int { kOk = 0, kNegative = 1, kBudget = 2, kInputError = 3 };

namespace cli {

struct Options {
    double budget_seconds = 60.0;
    bool witnesses = false;
    bool timing = false;
    std::string format;
    unsigned threads = 1;
};

inline SearchBudget budget_of(const Options& o)
{
    if (o.budget_seconds <= 0)
        return SearchBudget::unlimited();
    return SearchBudget::seconds(o.budget_seconds);
}

class Runner {
public:
    Runner(const Options& opt, std::ostream& out)
        : opt_(opt)
        , out_(out)
        , start_(std::chrono::steady_clock::now())
    {
    }

    int check(const std::string& graph_path, const std::string& coloring_path)
    {
        require_format({"json"});
        const Graph g = load_graph(graph_path);
        const Coloring c = read_file<Coloring>(coloring_path, [](std::istream& in) { return parse_coloring(in); });
        if (c.size() != g.order())
            throw input_error("coloring has " + std::to_string(c.size()) + " colors for " + std::to_string(g.order())
                              + " vertices");
        json violations = json::array();
        for (const auto& v : worm_violations(g, c)) {
            const auto& t = v.triangle.vertices;
            violations.push_back({{"triangle", {t[0] + 1, t[1] + 1, t[2] + 1}},
                                  {"kind", v.monochromatic ? "monochromatic" : "rainbow"}});
        }
        const bool ok = violations.empty();
        emit(report("check", graph_path, g, {{"valid", ok}, {"colors", c.num_colors()}, {"violations", violations}}));
        return ok ? kOk : kNegative;
    }

    int spectrum(const std::string& graph_path)
    {
        require_format({"json", "csv"});
        const Graph g = load_graph(graph_path);
        SpectrumOptions so;
        so.keep_witnesses = opt_.witnesses;
        so.threads = opt_.threads;
        const auto rep = feasible_set(from_graph_k3(g), budget_of(opt_), so);
        if (opt_.format == "csv")
            out_ << spectrum_csv(rep, g.order());
        else {
            auto r = report("spectrum", graph_path, g, to_json(rep));
            r.budget_status = rep.complete ? BudgetStatus::complete : BudgetStatus::exceeded;
            emit(r);
        }
        if (!rep.complete)
            return kBudget;
        return rep.colorable ? kOk : kNegative;
    }

    int bound(const std::string& graph_path, bool lower)
    {
        require_format({"json"});
        const Graph g = load_graph(graph_path);
        const auto h = from_graph_k3(g);
        const auto b = lower ? lower_chromatic(h, budget_of(opt_)) : upper_chromatic(h, budget_of(opt_));
        json res;
        switch (b.status) {
        case ChromaticBound::Status::exact:
            res = {{"status", "exact"}, {"value", b.value}};
            break;
        case ChromaticBound::Status::uncolorable:
            res = {{"status", "uncolorable"}, {"value", nullptr}};
            break;
        case ChromaticBound::Status::indeterminate:
            res = {{"status", "indeterminate"}, {"value", nullptr}, {"range", {b.lo, b.hi}}};
            break;
        }
        if (opt_.witnesses && b.witness)
            res["witness"] = to_json(*b.witness);
        auto r = report(lower ? "wminus" : "wplus", graph_path, g, res);
        if (b.status == ChromaticBound::Status::indeterminate)
            r.budget_status = BudgetStatus::exceeded;
        emit(r);
        if (b.status == ChromaticBound::Status::indeterminate)
            return kBudget;
        return b.exact() ? kOk : kNegative;
    }

    int wplus_cubic(const std::string& graph_path)
    {
        require_format({"json"});
        const Graph g = load_graph(graph_path);
        const int value = wplus_maxdeg3(g);
        const auto& m = *triangle_core(g).census;
        emit(report("wplus-cubic", graph_path, g,
                    {{"value", value},
                     {"census", {{"K1", m.k1}, {"K3", m.k3}, {"K4-e", m.k4_minus_e}, {"K4", m.k4}}}}));
        return kOk;
    }

    int two_color_degenerate(const std::string& graph_path)
    {
        require_format({"json", "csv"});
        const Graph g = load_graph(graph_path);
        emit_coloring("two-color degenerate", graph_path, g, two_color_3degenerate(g));
        return kOk;
    }

    int two_color_from4col(const std::string& graph_path, const std::string& proper_path)
    {
        require_format({"json", "csv"});
        const Graph g = load_graph(graph_path);
        Coloring proper;
        if (!proper_path.empty()) {
            proper = read_file<Coloring>(proper_path, [](std::istream& in) { return parse_coloring(in); });
            if (proper.size() != g.order())
                throw input_error("proper coloring size does not match graph");
        } else {
            const auto chi = chromatic_number(g, budget_of(opt_));
            if (chi.status == ChromaticBound::Status::indeterminate) {
                auto r = report("two-color from4col", graph_path, g, {{"status", "indeterminate"}});
                r.budget_status = BudgetStatus::exceeded;
                emit(r);
                return kBudget;
            }
            if (chi.value > 4) {
                emit(report("two-color from4col", graph_path, g,
                            {{"status", "not-4-colorable"}, {"chromatic_number", chi.value}}));
                return kNegative;
            }
            proper = g.order() ? *chi.witness : Coloring();
        }
        emit_coloring("two-color from4col", graph_path, g, two_color_from_proper4(g, proper));
        return kOk;
    }

    int construct(const std::string& kind, const std::string& path, int anchor,
                  const std::vector<int>& designated, int copies)
    {
        require_format({"dimacs", "json"});
        Construction c;
        int in_vertices = 0;
        std::size_t in_edges = 0;
        if (kind == "k4free" || kind == "reduce-h2c") {
            const auto h = read_file<ThreeUniformHypergraph>(path, [](std::istream& in) { return parse_hypergraph(in); });
            in_vertices = h.n;
            in_edges = h.edges.size();
            if (kind == "reduce-h2c") {
                c = reduce_h2c_to_worm2(h);
            } else {
                if (designated.size() != 3)
                    throw input_error("--designated needs three vertex ids");
                c = k4free_steps(h, {designated[0] - 1, designated[1] - 1, designated[2] - 1}, copies);
            }
        } else {
            const Graph g = load_graph(path);
            in_vertices = g.order();
            in_edges = g.size();
            if (kind == "myc")
                c.graph = mycielskian(g);
            else if (kind == "boxk2")
                c = box_product_k2(g);
            else if (kind == "tripleid") {
                if (anchor < 1 || anchor > g.order())
                    throw input_error("--anchor out of range");
                auto box = box_product_k2(g);
                c = triple_identification(box.graph, box.trace, anchor - 1);
            } else if (kind == "reduce-3col")
                c = reduce_3col_to_worm3(g);
            else
                throw input_error("unknown construction " + kind);
        }
        if (opt_.format == "json") {
            RunReport r = report("construct " + kind, path, c.graph, {});
            r.vertices = in_vertices;
            r.edges = in_edges;
            r.result = {{"graph", to_json(c.graph)}, {"trace", to_json(c.trace)}};
            // minimality of the input hypergraph is taken on trust (checking it is exponential)
            if (kind == "k4free")
                r.result["criticality_checked"] = false;
            emit(r);
        } else {
            out_ << write_dimacs(c.graph);
        }
        return kOk;
    }

private:
    void require_format(std::initializer_list<const char*> allowed)
    {
        if (opt_.format.empty()) {
            opt_.format = *allowed.begin();
            return;
        }
        for (const char* f : allowed)
            if (opt_.format == f)
                return;
        throw input_error("format '" + opt_.format + "' not supported by this command");
    }

    static Graph load_graph(const std::string& path)
    {
        return read_file<Graph>(path, [](std::istream& in) { return parse_dimacs(in); });
    }

    RunReport report(const std::string& command, const std::string& path, const Graph& g, json result) const
    {
        RunReport r;
        r.command = command;
        r.input = path;
        r.vertices = g.order();
        r.edges = g.size();
        r.result = std::move(result);
        if (opt_.budget_seconds > 0)
            r.budget_seconds = opt_.budget_seconds;
        return r;
    }

    void emit(RunReport r)
    {
        if (opt_.timing)
            r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        out_ << to_json(r).dump(2) << '\n';
    }

    void emit_coloring(const std::string& command, const std::string& path, const Graph& g, const Coloring& c)
    {
        if (opt_.format == "csv") {
            out_ << "vertex,color\n";
            for (Vertex v = 0; v < c.size(); ++v)
                out_ << v + 1 << ',' << c[v] << '\n';
            return;
        }
        emit(report(command, path, g, {{"coloring", to_json(c)}, {"colors", c.num_colors()}}));
    }

    Options opt_;
    std::ostream& out_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace cli

/// Command-line entry point. Exit codes: 0 success, 1 definitive negative
/// answer (invalid coloring, uncolorable, not 4-colorable), 2 search budget
/// exceeded, 3 input error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact toolkit for K3-WORM colorings of graphs", "worm"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    cli::Options opt;
    app.add_option("--budget-seconds", opt.budget_seconds, "Per-search time limit in seconds (<= 0: unlimited)")
        ->capture_default_str();
    app.add_flag("--witnesses", opt.witnesses, "Include witness colorings in reports");
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "dimacs"}));
    app.add_option("--threads", opt.threads, "Worker threads for spectrum sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--timing", opt.timing, "Record elapsed time in reports");

    std::string graph_path, second_path;
    int anchor = 1, copies = 3;
    std::vector<int> designated;

    auto* check = app.add_subcommand("check", "Validate a coloring file against a graph");
    check->add_option("graph", graph_path, "DIMACS graph")->required();
    check->add_option("coloring", second_path, "Coloring file")->required();

    auto* spectrum = app.add_subcommand("spectrum", "Feasible set, W-, W+ and gaps");
    spectrum->add_option("graph", graph_path)->required();
    auto* wminus = app.add_subcommand("wminus", "Lower WORM chromatic number");
    wminus->add_option("graph", graph_path)->required();
    auto* wplus = app.add_subcommand("wplus", "Upper WORM chromatic number");
    wplus->add_option("graph", graph_path)->required();
    auto* wcubic = app.add_subcommand("wplus-cubic", "Upper WORM chromatic number for maximum degree <= 3");
    wcubic->add_option("graph", graph_path)->required();

    auto* construct = app.add_subcommand("construct", "Build a construction or reduction");
    construct->require_subcommand(1);
    std::string kind;
    for (const char* name : {"myc", "boxk2", "tripleid", "k4free", "reduce-h2c", "reduce-3col"}) {
        auto* sub = construct->add_subcommand(name);
        sub->add_option("input", graph_path, "DIMACS graph or hypergraph file")->required();
        sub->callback([&kind, name] { kind = name; });
        if (std::string(name) == "tripleid")
            sub->add_option("--anchor", anchor, "Anchor vertex (1-based)")->capture_default_str();
        if (std::string(name) == "k4free") {
            sub->add_option("--designated", designated, "Designated hyperedge (three 1-based ids)")
                ->expected(3)
                ->delimiter(',')
                ->required();
            sub->add_option("--copies", copies, "Number of chained copies")->capture_default_str();
        }
    }

    auto* two = app.add_subcommand("two-color", "Two-color WORM colorings for special classes");
    two->require_subcommand(1);
    auto* degen = two->add_subcommand("degenerate", "Graphs of degeneracy <= 3");
    degen->add_option("graph", graph_path)->required();
    auto* from4 = two->add_subcommand("from4col", "4-colorable graphs");
    from4->add_option("graph", graph_path)->required();
    from4->add_option("--proper", second_path, "Proper coloring with at most 4 colors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kInputError;
    }

    cli::Runner run(opt, out);
    try {
        if (*check)
            return run.check(graph_path, second_path);
        if (*spectrum)
            return run.spectrum(graph_path);
        if (*wminus)
            return run.bound(graph_path, true);
        if (*wplus)
            return run.bound(graph_path, false);
        if (*wcubic)
            return run.wplus_cubic(graph_path);
        if (*construct)
            return run.construct(kind, graph_path, anchor, designated, copies);
        if (*degen)
            return run.two_color_degenerate(graph_path);
        if (*from4)
            return run.two_color_from4col(graph_path, second_path);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const budget_exceeded& e) {
        err << "error: " << e.what() << '\n';
        return kBudget;
    }
    return kInputError;
}

} // namespace worm
