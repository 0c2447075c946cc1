// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>

#include "htec/analysis.hpp"
#include "htec/baselines.hpp"
#include "htec/bipartite.hpp"
#include "htec/capacity.hpp"
#include "htec/error.hpp"
#include "htec/hypergraph.hpp"
#include "htec/solver.hpp"
#include "htec/two_steps.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace htec;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Published sunflower scores, four decimals.
constexpr double kHub = 0.3489;
constexpr double kEdges[] = {0.2192, 0.2249, 0.2324, 0.2425, 0.2560, 0.2749};
constexpr double kLeaves[] = {0.0941, 0.1076, 0.1235, 0.1426, 0.1659, 0.1953};

/// Connected instances shared by several criteria.
std::vector<Hypergraph> connected_corpus() {
    std::mt19937_64 rng(20240601);
    std::vector<Hypergraph> corpus{testing::single_edge(), testing::sunflower_2_to_7()};
    for (int i = 0; i < 60; ++i) corpus.push_back(testing::random_connected_hypergraph(rng, 8, 6, 4));
    for (int i = 0; i < 60; ++i) corpus.push_back(testing::random_connected_hypergraph(rng, 40, 20, 6));
    return corpus;
}

std::vector<Hypergraph> disconnected_corpus() {
    std::mt19937_64 rng(7);
    std::vector<Hypergraph> corpus{Hypergraph({"a", "b", "c", "d"}, {{0, 1}, {2, 3}}),
                                   Hypergraph({"a", "b", "c"}, {{0, 1}})};
    while (corpus.size() < 40) {
        auto h = testing::random_hypergraph(rng, 20, 8, 4);
        if (!testing::union_find_connected(h)) corpus.push_back(std::move(h));
    }
    return corpus;
}

Outcome sunflower_golden() {
    const auto start = std::chrono::steady_clock::now();
    const auto h = testing::sunflower_2_to_7();
    const auto r = htec::htec(h);
    const auto elapsed = seconds_since(start);
    double worst = std::abs(r.x_nodes[0] - kHub);
    for (std::size_t e = 0; e < 6; ++e) {
        worst = std::max(worst, std::abs(r.x_edges[e] - kEdges[e]));
        for (auto v : h.edge(static_cast<EdgeId>(e))) {
            if (v != 0) worst = std::max(worst, std::abs(r.x_nodes[v] - kLeaves[e]));
        }
    }
    const auto detail = "max deviation " + num(worst) + ", " + num(elapsed) + " s";
    return worst <= 5e-4 && elapsed < 1.0 ? pass(detail) : fail(detail);
}

Outcome normalization_pin() {
    const auto r = htec::htec(testing::sunflower_2_to_7());
    double computed = 0.0;
    for (double v : r.combined()) computed += v * v;

    // 22 nodes: hub plus 1..6 leaves per petal.
    double read = kHub * kHub;
    double magnitude = kHub;
    for (std::size_t e = 0; e < 6; ++e) {
        const auto leaves = static_cast<double>(e + 1);
        read += kEdges[e] * kEdges[e] + leaves * kLeaves[e] * kLeaves[e];
        magnitude += kEdges[e] + leaves * kLeaves[e];
    }
    // Each printed value is within 5e-5 of the truth: |sum x^2 - sum t^2| <=
    // sum (2 |x| 5e-5 + 25e-10).
    const double rounding = 2.0 * 5e-5 * magnitude + 28 * 25e-10;
    const auto detail = "computed |sum-1| " + num(std::abs(computed - 1.0)) + ", table |sum-1| " +
                        num(std::abs(read - 1.0)) + " (bound " + num(rounding) + ")";
    return std::abs(computed - 1.0) <= 1e-9 && std::abs(read - 1.0) <= rounding ? pass(detail) : fail(detail);
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto h = testing::random_connected_hypergraph(rng, 8, 6, 4);
        const auto b = build_incidence_bipartite(h);
        const TwoStepsOperator op(b);
        const auto x = testing::random_vector(rng, op.dimension());
        worst = std::max(worst, testing::max_abs_diff(op.apply(x), dense_apply(materialize_dense(b), x)));
    }
    const auto detail = "50 instances, max |implicit - dense| " + num(worst);
    return worst <= 1e-12 ? pass(detail) : fail(detail);
}

Outcome eigen_residual() {
    std::mt19937_64 rng(4);
    std::vector<Hypergraph> cases{testing::sunflower_2_to_7()};
    for (int i = 0; i < 200; ++i) {
        auto h = testing::random_connected_hypergraph(rng, 40, 20, 6);
        if (h.num_nodes() + h.num_edges() <= 60) cases.push_back(std::move(h));
    }
    double worst_residual = 0.0;
    std::size_t bracket_violations = 0;
    for (const auto& h : cases) {
        SolverConfig cfg;
        cfg.record_trace = true;
        const auto r = htec::htec(h, cfg);
        worst_residual = std::max(worst_residual, r.residual_inf / r.rho);
        for (std::size_t t = 0; t < r.trace.size(); ++t) {
            const auto& rec = r.trace[t];
            if (rec.lower > r.rho || rec.upper < r.rho) ++bracket_violations;
            if (t > 0 && (rec.lower < r.trace[t - 1].lower || rec.upper > r.trace[t - 1].upper)) {
                ++bracket_violations;
            }
        }
    }
    const auto detail = std::to_string(cases.size()) + " instances, max residual/rho " + num(worst_residual) + ", " +
                        std::to_string(bracket_violations) + " bracket violations";
    return worst_residual <= 1e-8 && bracket_violations == 0 ? pass(detail) : fail(detail);
}

Outcome exact_small_case() {
    const auto r = htec::htec(testing::single_edge());
    double worst = 0.0;
    for (double v : r.combined()) worst = std::max(worst, std::abs(v - 1.0 / std::sqrt(3.0)));
    const auto detail = "|rho-2| " + num(std::abs(r.rho - 2.0)) + ", max |x-1/sqrt3| " + num(worst);
    return std::abs(r.rho - 2.0) <= 1e-12 && worst <= 1e-10 ? pass(detail) : fail(detail);
}

Outcome capacity_limit() {
    std::mt19937_64 rng(6);
    std::vector<Hypergraph> cases{testing::sunflower_2_to_7()};
    for (int i = 0; i < 20; ++i) cases.push_back(testing::random_connected_hypergraph(rng, 40, 20, 6));

    double worst_gap = 0.0;
    double worst_iterate = 0.0;
    for (const auto& h : cases) {
        const auto b = build_incidence_bipartite(h);
        // Reference solved from a random start, off the capacity trajectory.
        SolverConfig reference{.tol = 1e-13, .max_iter = 10000};
        reference.initial = testing::random_vector(rng, b.size(), 0.1, 1.0);
        const auto gaps = capacity_convergence(b, 200, reference);
        worst_gap = std::max(worst_gap, *std::min_element(gaps.begin(), gaps.end()));

        std::vector<IterationRecord> steps;
        SolverConfig cfg;
        cfg.tol = 1e-300;
        cfg.max_iter = 21;
        cfg.observer = [&](const IterationRecord& r) { steps.push_back(r); };
        try {
            htec::htec(TwoStepsOperator(b), cfg);
        } catch (const NoConvergence&) {
        }
        double factor = std::sqrt(static_cast<double>(b.size()));
        for (std::size_t t = 0; t <= 20; ++t) {
            // An exact first-step eigenvector ends the run early; later
            // iterates are the same vector.
            const auto& step = steps[std::min(t, steps.size() - 1)];
            const auto c = geometric_capacity(b, t);
            for (std::size_t i = 0; i < b.size(); ++i) {
                worst_iterate = std::max(worst_iterate, std::abs(c.values[i] - factor * step.iterate[i]) / c.values[i]);
            }
            factor *= step.scale;
        }
    }

    std::mt19937_64 small(8);
    double worst_tree = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto h = testing::random_connected_hypergraph(small, 6, 4, 3);
        const auto b = build_incidence_bipartite(h);
        for (std::size_t t = 0; t <= 3; ++t) {
            const auto c = geometric_capacity(b, t);
            for (Vertex root = 0; root < b.size(); ++root) {
                const auto literal = tree_capacity(enumerate_expansion_tree(b, root, t));
                worst_tree = std::max(worst_tree, std::abs(literal - c.values[root]) / c.values[root]);
            }
        }
    }
    const auto detail = "max best gap " + num(worst_gap) + ", max rel |C_t - iterate| " + num(worst_iterate) +
                        ", max rel |tree - C_t| " + num(worst_tree);
    return worst_gap <= 1e-8 && worst_iterate <= 1e-12 && worst_tree <= 1e-12 ? pass(detail) : fail(detail);
}

Outcome primitivity() {
    std::size_t bad = 0;
    const auto connected = connected_corpus();
    for (const auto& h : connected) {
        if (!(check_weak_primitivity(build_incidence_bipartite(h)) == PrimitivityReport{true, true, true})) ++bad;
    }
    const auto disconnected = disconnected_corpus();
    for (const auto& h : disconnected) {
        if (check_weak_primitivity(build_incidence_bipartite(h)).weakly_irreducible) ++bad;
    }
    const auto detail = std::to_string(connected.size()) + " connected, " + std::to_string(disconnected.size()) +
                        " disconnected, " + std::to_string(bad) + " wrong";
    return bad == 0 ? pass(detail) : fail(detail);
}

std::vector<double> dense_perron(const std::vector<std::vector<double>>& m) {
    const auto n = m.size();
    std::vector<double> x(n, 1.0);
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
        }
        double norm = 0.0;
        for (double v : y) norm += v * v;
        for (auto& v : y) v /= std::sqrt(norm);
        const auto change = testing::max_abs_diff(x, y);
        x = std::move(y);
        if (change < 1e-15) break;
    }
    return x;
}

Outcome linear_certification() {
    std::mt19937_64 rng(9);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = testing::random_connected_hypergraph(rng, 12, 8, 4);
        const auto nv = h.num_nodes();
        const auto ne = h.num_edges();
        std::vector<std::vector<double>> bbt(nv, std::vector<double>(nv, 0.0));
        std::vector<std::vector<double>> btb(ne, std::vector<double>(ne, 0.0));
        for (std::size_t e = 0; e < ne; ++e) {
            const auto edge = h.edge(static_cast<EdgeId>(e));
            for (auto u : edge) {
                for (auto v : edge) bbt[u][v] += 1.0;
            }
            for (std::size_t f = 0; f < ne; ++f) {
                const auto other = h.edge(static_cast<EdgeId>(f));
                for (auto v : edge) btb[e][f] += std::count(other.begin(), other.end(), v);
            }
        }
        const auto r = mapping_centrality(h, LinearModel{}, 1e-13, 100000);
        worst = std::max(worst, testing::max_abs_diff(r.x_nodes, dense_perron(bbt)));
        worst = std::max(worst, testing::max_abs_diff(r.y_edges, dense_perron(btb)));
    }
    const auto detail = "20 instances, max |baseline - oracle| " + num(worst);
    return worst <= 1e-8 ? pass(detail) : fail(detail);
}

double kendall_pairs(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0, ta = 0, tb = 0, pairs = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            ++pairs;
            s += ((a[i] > a[j]) - (a[i] < a[j])) * ((b[i] > b[j]) - (b[i] < b[j]));
            ta += a[i] == a[j];
            tb += b[i] == b[j];
        }
    }
    return s / std::sqrt((pairs - ta) * (pairs - tb));
}

double spearman_definition(const std::vector<double>& a, const std::vector<double>& b) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            double less = 0, equal = 0;
            for (double x : v) {
                less += x < v[i];
                equal += x == v[i];
            }
            r[i] = less + (equal + 1) / 2;
        }
        return r;
    };
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const auto n = static_cast<double>(a.size());
    const auto ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const auto mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

Outcome correlation_correctness() {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::size_t> length(2, 80);
    std::uniform_int_distribution<int> small(0, 5);
    std::normal_distribution<double> wide;
    double worst = 0.0;
    int checked = 0;
    while (checked < 200) {
        const auto n = length(rng);
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = checked % 2 == 0 ? small(rng) : wide(rng);
            b[i] = checked % 3 == 0 ? small(rng) : wide(rng);
        }
        const auto flat = [](const std::vector<double>& v) {
            return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
        };
        if (flat(a) || flat(b)) continue;
        ++checked;
        worst = std::max(worst, std::abs(kendall_tau(a, b) - kendall_pairs(a, b)));
        worst = std::max(worst, std::abs(spearman_rho(a, b) - spearman_definition(a, b)));
    }

    std::vector<std::string> labels;
    for (int i = 0; i < 100; ++i) labels.push_back("i" + std::to_string(i));
    ScoreTable table(labels);
    table.set_column("s", testing::random_vector(rng, 100));
    std::vector<std::size_t> ks;
    for (std::size_t k = 2; k <= 100; ++k) ks.push_back(k);
    const auto curve = topk_curve(table, "s", "s", ks);
    double self = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        self = std::max({self, std::abs(curve.kendall[i] - 1.0), std::abs(curve.spearman[i] - 1.0)});
    }
    const auto detail = "200 vector pairs, max |fast - oracle| " + num(worst) + ", self curve max |c-1| " + num(self);
    return worst <= 1e-12 && self == 0.0 ? pass(detail) : fail(detail);
}

std::string fold_label(const std::string& s) {
    std::string out;
    for (char c : s) out += (c == '-' || c == '_') ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::optional<fs::path> find_file(const fs::path& dir, const std::string& needle) {
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.find(needle) != std::string::npos) return entry.path();
    }
    return std::nullopt;
}

Outcome math_stackexchange() {
    const char* env = std::getenv("HTEC_MATH_SX_DIR");
    if (env == nullptr || !fs::is_directory(env)) {
        return {Status::Skip, "set HTEC_MATH_SX_DIR to a directory with *nverts*, *simplices* and *labels* files"};
    }
    const auto nverts_path = find_file(env, "nverts");
    const auto simplices_path = find_file(env, "simplices");
    const auto labels_path = find_file(env, "labels");
    if (!nverts_path || !simplices_path || !labels_path) return fail("dataset files not found in " + std::string(env));

    const auto start = std::chrono::steady_clock::now();
    std::ifstream nverts(*nverts_path);
    std::ifstream simplices(*simplices_path);
    std::ifstream labels(*labels_path);
    const auto h = largest_component(parse_simplex_format(nverts, simplices, labels, {.dedupe_edges = true}).hypergraph);
    const auto s = stats(h);
    const bool stats_ok = s.num_nodes == 1629 && s.num_hyperedges == 170476 &&
                          std::abs(s.avg_cardinality - 3.48) <= 0.005 && s.max_cardinality == 5;

    const auto r = htec::htec(h);
    ScoreTable table(h.node_labels());
    table.set_column("htec", r.x_nodes);
    const std::vector<std::string> expected{"Real-analysis", "Calculus", "Integration", "Analysis",
                                            "Sequences-and-series", "Functional-analysis", "Linear-algebra",
                                            "Limits", "Derivatives", "Multivariable-calculus"};
    const auto top = top_labels(table, "htec", std::min<std::size_t>(10, table.size()));
    bool top_ok = top.size() == 10;
    for (std::size_t i = 0; i < top.size(); ++i) top_ok = top_ok && fold_label(top[i]) == fold_label(expected[i]);

    const auto linear = mapping_centrality(h, LinearModel{});
    const auto logexp = mapping_centrality(h, LogExpModel{});
    const auto tau_linear = kendall_tau(r.x_nodes, linear.x_nodes);
    const auto tau_logexp = kendall_tau(r.x_nodes, logexp.x_nodes);
    const auto elapsed = seconds_since(start);

    std::string detail = "stats " + std::to_string(s.num_nodes) + "/" + std::to_string(s.num_hyperedges) + "/" +
                         num(s.avg_cardinality) + "/" + std::to_string(s.max_cardinality) + ", top-10 " +
                         (top_ok ? "match" : "differ (first: " + top[0] + ")") + ", tau linear " + num(tau_linear) +
                         " vs logexp " + num(tau_logexp) + ", " + num(elapsed) + " s";
    return stats_ok && top_ok && tau_linear > tau_logexp && elapsed < 60.0 ? pass(detail) : fail(detail);
}

Outcome walk_identities() {
    auto corpus = connected_corpus();
    for (auto& h : disconnected_corpus()) corpus.push_back(std::move(h));
    std::size_t bad = 0;
    std::size_t rows = 0;
    for (const auto& h : corpus) {
        for (const auto& id : first_iteration_identities(h)) {
            ++rows;
            if (id.walk_value != id.structural_value) ++bad;
        }
    }
    const auto detail = std::to_string(corpus.size()) + " hypergraphs, " + std::to_string(rows) + " rows, " +
                        std::to_string(bad) + " mismatches";
    return bad == 0 ? pass(detail) : fail(detail);
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"sunflower golden values", sunflower_golden},
        {"normalization pin", normalization_pin},
        {"implicit operator equals dense tensor", oracle_equivalence},
        {"eigen residual and monotone brackets", eigen_residual},
        {"single hyperedge exact case", exact_small_case},
        {"capacity convergence", capacity_limit},
        {"weak primitivity", primitivity},
        {"linear baseline certification", linear_certification},
        {"correlation correctness", correlation_correctness},
        {"Math-StackExchange integration", math_stackexchange},
        {"first iteration identities", walk_identities},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = fail(std::string("exception: ") + e.what());
        }
        const char* tag = outcome.status == Status::Pass ? "PASS" : outcome.status == Status::Skip ? "SKIP" : "FAIL";
        if (outcome.status == Status::Fail) ++failures;
        std::cout << "criterion " << i + 1 << ": " << tag << "  " << criteria[i].first << " (" << outcome.detail
                  << ")\n";
    }
    return failures == 0 ? 0 : 1;
}
