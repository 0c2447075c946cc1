#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "htec/baselines.hpp"
#include "htec/hypergraph.hpp"
#include "htec/solver.hpp"
#include "htec/two_steps.hpp"

namespace htec::cli {

/// Method-independent view of a centrality run, as written to and read from
/// result files. Spectral fields are absent for the mapping baselines.
struct ResultDocument {
    std::string method;
    std::optional<double> rho;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> residual_inf;
    std::size_t iterations = 0;
    std::vector<std::string> node_labels;
    std::vector<double> node_scores;
    std::vector<std::string> edge_labels;
    std::vector<double> edge_scores;
};

ResultDocument make_document(const Hypergraph& h, const CentralityResult& result);
ResultDocument make_document(const Hypergraph& h, const BaselineResult& result);

/// {method, rho, lower, upper, iterations, residual_inf,
///  nodes: [{id, label, score}], edges: [{id, label?, score}]}
void write_json(const ResultDocument& doc, std::ostream& out);

/// kind,id,label,score with kind in {node, edge}.
void write_csv(const ResultDocument& doc, std::ostream& out);

/// Reads either layout back; `source` names the stream in error messages.
ResultDocument read_json(std::istream& in, const std::string& source);
ResultDocument read_csv(std::istream& in, const std::string& source);

void write_stats_json(const DatasetStats& s, std::ostream& out);
void write_primitivity_json(const PrimitivityReport& report, bool connected, std::ostream& out);

}  // namespace htec::cli
