#include "cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "htec/analysis.hpp"
#include "htec/baselines.hpp"
#include "htec/bipartite.hpp"
#include "htec/capacity.hpp"
#include "htec/error.hpp"
#include "htec/hypergraph.hpp"
#include "htec/solver.hpp"
#include "htec/two_steps.hpp"

namespace htec::cli {

namespace {

/// Failure to open or write a file; reported with exit code kParse.
class IoError : public Error {
public:
    using Error::Error;
};

/// Options shared by every subcommand.
struct RunConfig {
    std::vector<std::string> inputs;
    std::string format = "edgelist";
    bool largest_component = false;
    bool dedupe_edges = false;
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::string output = "-";
    std::string output_format = "json";
    std::uint64_t seed = 0;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

Hypergraph load(const RunConfig& cfg, std::ostream& err) {
    const ParseOptions options{cfg.dedupe_edges};
    ParseReport report;
    const auto where = cfg.inputs.empty() ? std::string() : cfg.inputs.front();
    try {
        if (cfg.format == "edgelist") {
            if (cfg.inputs.size() != 1) throw CLI::ValidationError("--format edgelist takes exactly one input file");
            auto in = open_input(cfg.inputs[0]);
            report = parse_hyperedge_list(in, options);
        } else {
            if (cfg.inputs.size() < 2 || cfg.inputs.size() > 3) {
                throw CLI::ValidationError("--format simplex takes NVERTS SIMPLICES [LABELS]");
            }
            auto nverts = open_input(cfg.inputs[0]);
            auto simplices = open_input(cfg.inputs[1]);
            if (cfg.inputs.size() == 3) {
                auto labels = open_input(cfg.inputs[2]);
                report = parse_simplex_format(nverts, simplices, labels, options);
            } else {
                report = parse_simplex_format(nverts, simplices, options);
            }
        }
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (report.duplicate_members > 0) {
        err << "warning: collapsed " << report.duplicate_members << " repeated node(s) inside hyperedges\n";
    }
    if (report.duplicate_edges > 0) err << "note: removed " << report.duplicate_edges << " duplicate hyperedge(s)\n";

    auto h = std::move(report.hypergraph);
    if (cfg.largest_component) {
        const auto before_nodes = h.num_nodes();
        const auto before_edges = h.num_edges();
        h = largest_component(h);
        if (h.num_nodes() != before_nodes || h.num_edges() != before_edges) {
            err << "note: largest component keeps " << h.num_nodes() << "/" << before_nodes << " nodes and "
                << h.num_edges() << "/" << before_edges << " hyperedges\n";
        }
    }
    return h;
}

/// Runs `write` against --output (or `out` for "-").
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
    if (path == "-") {
        write(out);
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError("cannot write '" + path + "'");
    write(file);
    if (!file) throw IoError("error writing '" + path + "'");
}

void emit_document(const RunConfig& cfg, const ResultDocument& doc, std::ostream& out) {
    emit(cfg.output, out, [&](std::ostream& os) {
        if (cfg.output_format == "csv") {
            write_csv(doc, os);
        } else {
            write_json(doc, os);
        }
    });
}

std::vector<std::size_t> default_ks(std::size_t n) {
    std::vector<std::size_t> ks;
    if (n <= 50) {
        for (std::size_t k = 2; k <= n; ++k) ks.push_back(k);
        return ks;
    }
    for (std::size_t decade = 1; decade <= n; decade *= 10) {
        for (std::size_t m : {2, 5, 10}) {
            const auto k = m * decade;
            if (k <= n && (ks.empty() || k > ks.back())) ks.push_back(k);
        }
    }
    if (ks.back() != n) ks.push_back(n);
    return ks;
}

ResultDocument load_result(const std::string& path) {
    auto in = open_input(path);
    const auto ext = std::filesystem::path(path).extension().string();
    auto doc = ext == ".csv" ? read_csv(in, path) : read_json(in, path);
    if (doc.method == "unknown") doc.method = std::filesystem::path(path).stem().string();
    return doc;
}

int cmd_compute(const RunConfig& cfg, bool random_start, const std::string& trace_path, std::ostream& out,
                std::ostream& err) {
    const auto h = load(cfg, err);
    SolverConfig solver;
    solver.tol = cfg.tol.value_or(1e-10);
    solver.max_iter = cfg.max_iter.value_or(1000);
    solver.record_trace = !trace_path.empty();
    if (random_start) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> dist(0.5, 1.5);
        solver.initial.resize(h.num_nodes() + h.num_edges());
        for (auto& v : solver.initial) v = dist(rng);
    }
    const auto result = htec(h, solver);
    emit_document(cfg, make_document(h, result), out);
    if (!trace_path.empty()) {
        emit(trace_path, out, [&](std::ostream& os) {
            os << "iteration,lower,upper\n";
            for (std::size_t k = 0; k < result.trace.size(); ++k) {
                os << k << ',' << format_double(result.trace[k].lower) << ',' << format_double(result.trace[k].upper)
                   << '\n';
            }
        });
    }
    return kOk;
}

int cmd_baseline(const RunConfig& cfg, const std::string& model_text, double p, bool product, std::ostream& out,
                 std::ostream& err) {
    auto model = parse_model(model_text, p);
    if (auto* m = std::get_if<LogExpModel>(&model)) m->geometric_mean = !product;
    const auto h = load(cfg, err);
    const auto result = mapping_centrality(h, model, cfg.tol.value_or(1e-8), cfg.max_iter.value_or(1000));
    emit_document(cfg, make_document(h, result), out);
    return kOk;
}

int cmd_compare(const RunConfig& cfg, const std::string& output_dir, std::vector<std::size_t> ks,
                const std::string& mode_text, std::ostream& err) {
    if (cfg.inputs.size() < 2) throw CLI::ValidationError("compare needs at least two result files");
    const auto mode = mode_text == "union" ? TopkMode::Union : TopkMode::Reference;

    std::vector<ResultDocument> docs;
    std::vector<std::string> names;
    for (const auto& path : cfg.inputs) {
        docs.push_back(load_result(path));
        auto name = docs.back().method;
        for (int suffix = 2; std::find(names.begin(), names.end(), name) != names.end(); ++suffix) {
            name = docs.back().method + "_" + std::to_string(suffix);
        }
        names.push_back(name);
    }
    const auto& ref = docs.front();
    for (std::size_t r = 1; r < docs.size(); ++r) {
        if (docs[r].node_labels != ref.node_labels || docs[r].edge_scores.size() != ref.edge_scores.size()) {
            err << "error: " << cfg.inputs[r] << " does not describe the same nodes and hyperedges as "
                << cfg.inputs[0] << '\n';
            return kParse;
        }
    }

    std::vector<std::string> edge_labels = ref.edge_labels;
    if (edge_labels.empty()) {
        for (std::size_t e = 0; e < ref.edge_scores.size(); ++e) edge_labels.push_back("e" + std::to_string(e + 1));
    }
    ScoreTable nodes(ref.node_labels);
    ScoreTable edges(edge_labels);
    for (std::size_t r = 0; r < docs.size(); ++r) {
        nodes.set_column(names[r], docs[r].node_scores);
        edges.set_column(names[r], docs[r].edge_scores);
    }

    std::filesystem::create_directories(output_dir);
    const auto dir = std::filesystem::path(output_dir);
    for (const auto& [kind, table] : {std::pair<std::string, const ScoreTable*>{"nodes", &nodes}, {"edges", &edges}}) {
        if (table->size() < 2) continue;
        auto kind_ks = ks.empty() ? default_ks(table->size()) : ks;
        std::erase_if(kind_ks, [&](std::size_t k) { return k > table->size(); });
        for (std::size_t r = 1; r < docs.size(); ++r) {
            const auto stem = kind + "_" + names[0] + "_vs_" + names[r];
            emit((dir / (stem + "_scatter.csv")).string(), err,
                 [&](std::ostream& os) { scatter_export(*table, names[0], names[r], os); });
            const auto curve = topk_curve(*table, names[0], names[r], kind_ks, mode);
            emit((dir / (stem + "_topk.csv")).string(), err, [&](std::ostream& os) { write_curve_csv(curve, os); });
        }
    }
    return kOk;
}

int cmd_sunflower(const RunConfig& cfg, const std::vector<std::size_t>& sizes, std::ostream& out) {
    const auto h = generate_sunflower(sizes);
    emit(cfg.output, out, [&](std::ostream& os) { write_hyperedge_list(h, os); });
    return kOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto h = load(cfg, err);
    emit(cfg.output, out, [&](std::ostream& os) { write_stats_json(stats(h), os); });
    return kOk;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto h = load(cfg, err);
    const auto b = build_incidence_bipartite(h);
    const auto report = check_weak_primitivity(b);
    emit(cfg.output, out, [&](std::ostream& os) { write_primitivity_json(report, is_connected(b), os); });
    return kOk;
}

int cmd_capacity(const RunConfig& cfg, std::size_t t_max, std::ostream& out, std::ostream& err) {
    const auto h = load(cfg, err);
    SolverConfig solver{.tol = cfg.tol.value_or(1e-13), .max_iter = cfg.max_iter.value_or(10000)};
    const auto gaps = capacity_convergence(build_incidence_bipartite(h), t_max, solver);
    emit(cfg.output, out, [&](std::ostream& os) {
        os << "t,gap\n";
        for (std::size_t t = 0; t < gaps.size(); ++t) os << t << ',' << format_double(gaps[t]) << '\n';
    });
    return kOk;
}

void add_input_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("inputs", cfg.inputs,
                   "Input file (edgelist) or NVERTS SIMPLICES [LABELS] (simplex)")
        ->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-steps eigenvector centrality of nodes and hyperedges in hypergraphs"};
    app.name("htec");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Input format")
        ->check(CLI::IsMember({"edgelist", "simplex"}))
        ->capture_default_str();
    app.add_flag("--largest-component", cfg.largest_component, "Restrict to the largest connected component");
    app.add_flag("--dedupe-edges", cfg.dedupe_edges, "Drop exact-duplicate hyperedges");
    app.add_option("--tol", cfg.tol, "Convergence tolerance (compute 1e-10, baseline 1e-8, capacity 1e-13)")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iter", cfg.max_iter, "Iteration cap (compute and baseline 1000, capacity 10000)")
        ->check(CLI::PositiveNumber);
    app.add_option("--output", cfg.output, "Output path, '-' for stdout")->capture_default_str();
    app.add_option("--output-format", cfg.output_format, "Result file layout")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for --random-start")->capture_default_str();

    auto* compute = app.add_subcommand("compute", "HTEC scores of nodes and hyperedges");
    add_input_options(*compute, cfg);
    bool random_start = false;
    std::string trace_path;
    compute->add_flag("--random-start", random_start, "Start from a random positive vector drawn with --seed");
    compute->add_option("--trace", trace_path, "Write per-iteration bounds as CSV to this path");

    auto* baseline = app.add_subcommand("baseline", "Linear, Max or Log-Exp node-edge centrality");
    add_input_options(*baseline, cfg);
    std::string model_text;
    double p = 10.0;
    bool product = false;
    baseline->add_option("--model", model_text, "linear, max or logexp")
        ->required()
        ->check(CLI::IsMember({"linear", "max", "logexp"}));
    baseline->add_option("--p", p, "Exponent of the max model's p-mean")->capture_default_str();
    baseline->add_flag("--logexp-product", product, "Log-Exp edge score as the plain product of member scores");

    auto* compare = app.add_subcommand("compare", "Scatter data and top-k rank correlations of result files");
    compare->add_option("inputs", cfg.inputs, "Result files (.json or .csv); the first is the reference")
        ->required()
        ->check(CLI::ExistingFile);
    std::string output_dir = ".";
    std::vector<std::size_t> ks;
    std::string mode_text = "reference";
    compare->add_option("--output-dir", output_dir, "Directory for the CSV outputs")->capture_default_str();
    compare->add_option("--ks", ks, "Top-k sizes (default: a grid up to the item count)")->delimiter(',');
    compare->add_option("--topk-mode", mode_text, "Item selection for each k")
        ->check(CLI::IsMember({"reference", "union"}))
        ->capture_default_str();

    auto* sunflower = app.add_subcommand("sunflower", "Write a sunflower hypergraph as an edge list");
    std::vector<std::size_t> sizes;
    sunflower->add_option("sizes", sizes, "Hyperedge sizes (each >= 2)")->required();

    auto* stats_cmd = app.add_subcommand("stats", "Node, hyperedge and cardinality statistics");
    add_input_options(*stats_cmd, cfg);

    auto* check = app.add_subcommand("check", "Weak irreducibility and primitivity of the two-steps tensor");
    add_input_options(*check, cfg);

    auto* capacity = app.add_subcommand("capacity", "Distance of normalized geometric capacities to HTEC");
    add_input_options(*capacity, cfg);
    std::size_t t_max = 50;
    capacity->add_option("--t-max", t_max, "Deepest tree depth")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const auto code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (compute->parsed()) return cmd_compute(cfg, random_start, trace_path, out, err);
        if (baseline->parsed()) return cmd_baseline(cfg, model_text, p, product, out, err);
        if (compare->parsed()) return cmd_compare(cfg, output_dir, ks, mode_text, err);
        if (sunflower->parsed()) return cmd_sunflower(cfg, sizes, out);
        if (stats_cmd->parsed()) return cmd_stats(cfg, out, err);
        if (check->parsed()) return cmd_check(cfg, out, err);
        if (capacity->parsed()) return cmd_capacity(cfg, t_max, out, err);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    } catch (const NotConnected& e) {
        err << "error: " << e.what() << "\nhint: pass --largest-component to analyse the largest connected part\n";
        return kNotConnected;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << " (last bounds " << format_double(e.lower()) << ", "
            << format_double(e.upper()) << "); try a looser --tol or a larger --max-iter\n";
        return kNoConvergence;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace htec::cli
