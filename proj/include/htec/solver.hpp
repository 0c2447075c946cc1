#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "htec/hypergraph.hpp"
#include "htec/two_steps.hpp"

namespace htec {

struct IterationRecord {
    double lower = 0.0;
    double upper = 0.0;
    /// 2-norm of (A x^2)^[1/2] at this step: the factor removed when forming
    /// the next iterate.
    double scale = 0.0;
    std::vector<double> iterate;
};

struct SolverConfig {
    /// Stop when (upper - lower) / lower <= tol.
    double tol = 1e-10;
    std::size_t max_iter = 1000;
    bool record_trace = false;
    /// Also keep every normalized iterate in the trace (memory n per step).
    bool record_iterates = false;
    /// Positive start vector; empty means uniform. Normalized before use.
    std::vector<double> initial;
    /// Called once per step with that step's record, iterate included.
    std::function<void(const IterationRecord&)> observer;

    void validate(std::size_t dimension) const;
};

struct CentralityResult {
    double rho = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> x_nodes;
    std::vector<double> x_edges;
    std::size_t iterations = 0;
    double residual_inf = 0.0;
    std::vector<IterationRecord> trace;

    /// Node scores followed by hyperedge scores (the bipartite vertex order).
    std::vector<double> combined() const;
};

/// HTEC by the nonnegative-tensor power iteration.
///
/// From a positive unit vector x, each step evaluates y = A x^2, brackets the
/// spectral radius by min_i and max_i of y_i / x_i^2, and moves to
/// x <- y^[1/2] / ||y^[1/2]||_2. The brackets are monotone (lower never
/// decreases, upper never increases) and meet at rho. The returned vector is
/// the one whose bracket satisfied the tolerance, and rho is its midpoint.
///
/// Throws NotConnected when B(H) is disconnected and NoConvergence after
/// max_iter steps.
CentralityResult htec(const Hypergraph& h, const SolverConfig& cfg = {});
CentralityResult htec(const TwoStepsOperator& op, const SolverConfig& cfg = {});

/// max_i |(A x^2)_i - rho * x_i^2|. Requires a strictly positive unit vector.
double residual_inf(const TwoStepsOperator& op, std::span<const double> x, double rho);

struct WalkIdentity {
    /// (A 1^2)_i: number of two-steps walks starting at i.
    double walk_value = 0.0;
    /// sum_{e ∋ v} |e| for a node v; sum_{v ∈ e} d(v) for a hyperedge e.
    double structural_value = 0.0;
};

/// Per bipartite vertex (nodes first), the first-iteration walk count next to
/// its structural reading. The two columns must agree.
std::vector<WalkIdentity> first_iteration_identities(const Hypergraph& h);

}  // namespace htec
