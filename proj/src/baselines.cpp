#include "htec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "htec/bipartite.hpp"
#include "htec/error.hpp"

namespace htec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Scales v to unit 2-norm; false if it has no positive mass.
bool normalize(std::span<double> v) {
    double sum = 0.0;
    for (auto x : v) sum += x * x;
    if (!(sum > 0.0) || !std::isfinite(sum)) return false;
    const auto norm = std::sqrt(sum);
    for (auto& x : v) x /= norm;
    return true;
}

double relative_change(std::span<const double> prev, std::span<const double> next) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        diff = std::max(diff, std::abs(next[i] - prev[i]));
        scale = std::max(scale, std::abs(next[i]));
    }
    return diff / scale;
}

bool all_positive(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

/// Node -> incident hyperedges, the rows of B.
std::vector<std::vector<EdgeId>> incident_edges(const Hypergraph& h) {
    std::vector<std::vector<EdgeId>> rows(h.num_nodes());
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        for (auto v : h.edge(static_cast<EdgeId>(e))) rows[v].push_back(static_cast<EdgeId>(e));
    }
    return rows;
}

void edges_to_nodes_linear(const std::vector<std::vector<EdgeId>>& rows, std::span<const double> y,
                           std::span<double> x) {
    for (std::size_t v = 0; v < rows.size(); ++v) {
        double sum = 0.0;
        for (auto e : rows[v]) sum += y[e];
        x[v] = sum;
    }
}

void edges_to_nodes_pmean(const std::vector<std::vector<EdgeId>>& rows, std::span<const double> y, double p,
                          std::span<double> x) {
    // Rescale by the largest score so y^p cannot overflow.
    const auto top = *std::max_element(y.begin(), y.end());
    for (std::size_t v = 0; v < rows.size(); ++v) {
        double sum = 0.0;
        for (auto e : rows[v]) sum += std::pow(y[e] / top, p);
        x[v] = top * std::pow(sum, 1.0 / p);
    }
}

void nodes_to_edges_linear(const Hypergraph& h, std::span<const double> x, std::span<double> y) {
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        double sum = 0.0;
        for (auto v : h.edge(static_cast<EdgeId>(e))) sum += x[v];
        y[e] = sum;
    }
}

void nodes_to_edges_logexp(const Hypergraph& h, std::span<const double> x, bool geometric_mean,
                           std::span<double> y) {
    // Log-domain sums; subtracting the maximum before exp is exact up to the
    // normalization that follows.
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        const auto edge = h.edge(static_cast<EdgeId>(e));
        double sum = 0.0;
        for (auto v : edge) sum += std::log(x[v]);
        if (geometric_mean) sum /= static_cast<double>(edge.size());
        y[e] = sum;
        top = std::max(top, sum);
    }
    for (auto& value : y) value = std::exp(value - top);
}

std::vector<double> mul_b(const std::vector<std::vector<EdgeId>>& rows, std::span<const double> y) {
    std::vector<double> x(rows.size());
    edges_to_nodes_linear(rows, y, x);
    return x;
}

std::vector<double> mul_bt(const Hypergraph& h, std::span<const double> x) {
    std::vector<double> y(h.num_edges());
    nodes_to_edges_linear(h, x, y);
    return y;
}

double rayleigh_residual(std::span<const double> v, std::span<const double> mv) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * mv[i];
        den += v[i] * v[i];
    }
    const auto quotient = num / den;
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(mv[i] - quotient * v[i]));
    return worst;
}

}  // namespace

std::string model_name(const MappingModel& model) {
    return std::visit(overloaded{[](const LinearModel&) { return std::string("linear"); },
                                 [](const MaxModel&) { return std::string("max"); },
                                 [](const LogExpModel&) { return std::string("logexp"); }},
                      model);
}

MappingModel parse_model(const std::string& name, double p) {
    if (name == "linear") return LinearModel{};
    if (name == "max") {
        if (!(p > 1.0)) throw InvalidArgument("max model needs p > 1");
        return MaxModel{p};
    }
    if (name == "logexp") return LogExpModel{};
    throw InvalidArgument("unknown model '" + name + "' (expected linear, max or logexp)");
}

BaselineResult mapping_centrality(const Hypergraph& h, const MappingModel& model, double tol,
                                  std::size_t max_iter) {
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (const auto* m = std::get_if<MaxModel>(&model); m != nullptr && !(m->p > 1.0)) {
        throw InvalidArgument("max model needs p > 1");
    }
    if (h.num_nodes() == 0 || h.num_edges() == 0 || !is_connected(build_incidence_bipartite(h))) {
        throw NotConnected("the incidence bipartite graph is disconnected");
    }

    const auto rows = incident_edges(h);
    const auto nv = h.num_nodes();
    const auto ne = h.num_edges();
    std::vector<double> x(nv, 1.0 / std::sqrt(static_cast<double>(nv)));
    std::vector<double> y(ne, 1.0 / std::sqrt(static_cast<double>(ne)));
    std::vector<double> x_next(nv);
    std::vector<double> y_next(ne);

    for (std::size_t it = 1; it <= max_iter; ++it) {
        std::visit(overloaded{[&](const MaxModel& m) { edges_to_nodes_pmean(rows, y, m.p, x_next); },
                              [&](const auto&) { edges_to_nodes_linear(rows, y, x_next); }},
                   model);
        if (!normalize(x_next)) throw NoConvergence(model_name(model) + " node scores vanished", it, 0.0, 0.0);

        std::visit(overloaded{[&](const LogExpModel& m) { nodes_to_edges_logexp(h, x_next, m.geometric_mean, y_next); },
                              [&](const auto&) { nodes_to_edges_linear(h, x_next, y_next); }},
                   model);
        if (!normalize(y_next)) throw NoConvergence(model_name(model) + " edge scores vanished", it, 0.0, 0.0);
        if (!all_positive(x_next) || !all_positive(y_next)) {
            throw NoConvergence(model_name(model) + " iteration lost strict positivity", it, 0.0, 0.0);
        }

        const auto dx = relative_change(x, x_next);
        const auto dy = relative_change(y, y_next);
        x.swap(x_next);
        y.swap(y_next);
        if (dx <= tol && dy <= tol) return {model, std::move(x), std::move(y), it, true};
    }
    throw NoConvergence(model_name(model) + " iteration did not converge in " + std::to_string(max_iter) +
                            " iterations",
                        max_iter, 0.0, 0.0);
}

FixedPointResidual linear_fixed_point_check(const Hypergraph& h, const BaselineResult& result) {
    if (!std::holds_alternative<LinearModel>(result.model)) {
        throw InvalidArgument("fixed-point check applies to the linear model only");
    }
    if (result.x_nodes.size() != h.num_nodes()) throw DimensionError(h.num_nodes(), result.x_nodes.size());
    if (result.y_edges.size() != h.num_edges()) throw DimensionError(h.num_edges(), result.y_edges.size());

    const auto rows = incident_edges(h);
    const auto bbt_x = mul_b(rows, mul_bt(h, result.x_nodes));
    const auto btb_y = mul_bt(h, mul_b(rows, result.y_edges));
    return {rayleigh_residual(result.x_nodes, bbt_x), rayleigh_residual(result.y_edges, btb_y)};
}

}  // namespace htec
