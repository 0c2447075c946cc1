#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "htec/hypergraph.hpp"

namespace htec {

// Node-edge centralities from alternating normalized mappings on the n_v x n_e
// incidence matrix B. Each model fixes how edge scores are aggregated into
// node scores and node scores into edge scores:
//
//   Linear:  x <- B y,                 y <- B^T x
//   Max:     x <- (B y^[p])^[1/p],     y <- B^T x
//   LogExp:  x <- B y,                 y <- exp(B^T log x)   (optionally / |e|)
//
// with both vectors rescaled to unit 2-norm after every half step. Linear is
// eigenvector centrality of the clique expansion (B B^T) and of the line graph
// (B^T B); Max lets a node's best hyperedge dominate; LogExp scores a
// hyperedge by a product of member scores, so one weak member drags it down.

struct LinearModel {};

struct MaxModel {
    /// Exponent of the p-mean; p -> infinity approaches the maximum.
    double p = 10.0;
};

struct LogExpModel {
    /// Edge score exp(mean of log x) instead of exp(sum of log x). The plain
    /// product has no positive fixed point on most non-uniform hypergraphs.
    bool geometric_mean = true;
};

using MappingModel = std::variant<LinearModel, MaxModel, LogExpModel>;

std::string model_name(const MappingModel& model);

/// Parses "linear", "max" or "logexp"; throws InvalidArgument otherwise.
MappingModel parse_model(const std::string& name, double p = 10.0);

struct BaselineResult {
    MappingModel model;
    std::vector<double> x_nodes;
    std::vector<double> y_edges;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Iterates from uniform vectors until the relative inf-norm change of both
/// vectors is <= tol. Throws NotConnected on a disconnected hypergraph and
/// NoConvergence past max_iter or when a score underflows to zero.
BaselineResult mapping_centrality(const Hypergraph& h, const MappingModel& model, double tol = 1e-8,
                                  std::size_t max_iter = 1000);

struct FixedPointResidual {
    double nodes = 0.0;
    double edges = 0.0;
};

/// ||B B^T x - s x||_inf and ||B^T B y - s' y||_inf with s, s' the Rayleigh
/// quotients. Both vanish iff (x, y) is a singular pair of B. Throws
/// InvalidArgument for a non-Linear result.
FixedPointResidual linear_fixed_point_check(const Hypergraph& h, const BaselineResult& result);

}  // namespace htec
