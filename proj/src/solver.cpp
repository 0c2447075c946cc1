#include "htec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "htec/error.hpp"

namespace htec {

namespace {

double norm2(std::span<const double> v) {
    double sum = 0.0;
    for (auto x : v) sum += x * x;
    return std::sqrt(sum);
}

}  // namespace

void SolverConfig::validate(std::size_t dimension) const {
    if (!(tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
    if (max_iter < 1) throw InvalidArgument("solver max_iter must be at least 1");
    if (!initial.empty()) {
        if (initial.size() != dimension) throw DimensionError(dimension, initial.size());
        for (auto v : initial) {
            if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("initial vector must be positive and finite");
        }
    }
}

std::vector<double> CentralityResult::combined() const {
    std::vector<double> x(x_nodes);
    x.insert(x.end(), x_edges.begin(), x_edges.end());
    return x;
}

CentralityResult htec(const Hypergraph& h, const SolverConfig& cfg) {
    return htec(TwoStepsOperator(build_incidence_bipartite(h)), cfg);
}

CentralityResult htec(const TwoStepsOperator& op, const SolverConfig& cfg) {
    const auto n = op.dimension();
    cfg.validate(n);
    if (n == 0 || !is_connected(op.graph())) {
        throw NotConnected("the incidence bipartite graph is disconnected; HTEC is not unique");
    }
    // A connected graph with one vertex has no walks at all.
    if (n < 2) throw NotConnected("the incidence bipartite graph has no edges");

    std::vector<double> x = cfg.initial.empty() ? std::vector<double>(n, 1.0) : cfg.initial;
    const auto start_norm = norm2(x);
    for (auto& v : x) v /= start_norm;

    std::vector<double> y(n);
    std::vector<double> work(n);
    CentralityResult result;
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
        op.apply(x, y, work);

        lower = std::numeric_limits<double>::infinity();
        upper = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ratio = y[i] / (x[i] * x[i]);
            lower = std::min(lower, ratio);
            upper = std::max(upper, ratio);
        }

        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            work[i] = std::sqrt(y[i]);
            scale += work[i] * work[i];
        }
        scale = std::sqrt(scale);

        if (cfg.record_trace || cfg.record_iterates || cfg.observer) {
            IterationRecord record{lower, upper, scale, {}};
            if (cfg.record_iterates || cfg.observer) record.iterate = x;
            if (cfg.observer) cfg.observer(record);
            if (cfg.record_trace || cfg.record_iterates) {
                if (!cfg.record_iterates) record.iterate.clear();
                result.trace.push_back(std::move(record));
            }
        }

        if (upper - lower <= cfg.tol * lower) {
            result.rho = 0.5 * (lower + upper);
            result.lower = lower;
            result.upper = upper;
            result.iterations = it + 1;
            result.residual_inf = residual_inf(op, x, result.rho);
            const auto nv = op.graph().num_nodes();
            result.x_nodes.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nv));
            result.x_edges.assign(x.begin() + static_cast<std::ptrdiff_t>(nv), x.end());
            return result;
        }

        for (std::size_t i = 0; i < n; ++i) x[i] = work[i] / scale;
    }
    throw NoConvergence("HTEC power iteration did not reach tol " + std::to_string(cfg.tol) + " in " +
                            std::to_string(cfg.max_iter) + " iterations",
                        cfg.max_iter, lower, upper);
}

double residual_inf(const TwoStepsOperator& op, std::span<const double> x, double rho) {
    const auto n = op.dimension();
    if (x.size() != n) throw DimensionError(n, x.size());
    for (auto v : x) {
        if (!(v > 0.0)) throw InvalidArgument("residual needs a strictly positive vector");
    }
    if (std::abs(norm2(x) - 1.0) > 1e-12) throw InvalidArgument("residual needs a unit 2-norm vector");

    const auto y = op.apply(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - rho * x[i] * x[i]));
    return worst;
}

std::vector<WalkIdentity> first_iteration_identities(const Hypergraph& h) {
    const TwoStepsOperator op(build_incidence_bipartite(h));
    const std::vector<double> ones(op.dimension(), 1.0);
    const auto walks = op.apply(ones);

    const auto deg = h.degrees();
    std::vector<double> structural(op.dimension(), 0.0);
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        const auto edge = h.edge(static_cast<EdgeId>(e));
        double degree_sum = 0.0;
        for (auto v : edge) {
            structural[v] += static_cast<double>(edge.size());
            degree_sum += static_cast<double>(deg[v]);
        }
        structural[h.num_nodes() + e] = degree_sum;
    }

    std::vector<WalkIdentity> out(op.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {walks[i], structural[i]};
    return out;
}

}  // namespace htec
