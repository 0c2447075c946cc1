#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace htec {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// A hypergraph with labelled nodes and an ordered multiset of hyperedges.
///
/// Node ids are dense in [0, num_nodes()). Each hyperedge is stored as a
/// strictly increasing sequence of node ids, so membership tests and merges
/// can rely on sortedness. Duplicate hyperedges are allowed: they are distinct
/// walk intermediates and therefore change centrality.
class Hypergraph {
public:
    Hypergraph() = default;

    /// Throws InvalidArgument when an invariant is violated: an id out of
    /// range, an empty or non-increasing hyperedge, a repeated node label, or
    /// an edge-label count that is neither 0 nor the number of hyperedges.
    Hypergraph(std::vector<std::string> node_labels, std::vector<std::vector<NodeId>> hyperedges,
               std::vector<std::string> edge_labels = {});

    std::size_t num_nodes() const noexcept { return node_labels_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::span<const NodeId> edge(EdgeId e) const { return edges_.at(e); }
    const std::vector<std::vector<NodeId>>& edges() const noexcept { return edges_; }
    std::size_t cardinality(EdgeId e) const { return edges_.at(e).size(); }

    const std::string& node_label(NodeId v) const { return node_labels_.at(v); }
    const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }

    bool has_edge_labels() const noexcept { return !edge_labels_.empty(); }
    const std::vector<std::string>& edge_labels() const noexcept { return edge_labels_; }

    /// d(v): number of hyperedges containing v, for every node.
    std::vector<std::size_t> degrees() const;

    /// Sum of hyperedge cardinalities (= sum of node degrees).
    std::size_t num_incidences() const noexcept;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::vector<std::string> node_labels_;
    std::vector<std::vector<NodeId>> edges_;
    std::vector<std::string> edge_labels_;
};

struct DatasetStats {
    std::size_t num_nodes = 0;
    std::size_t num_hyperedges = 0;
    double avg_cardinality = 0.0;
    std::size_t max_cardinality = 0;
};

struct ParseOptions {
    /// Drop exact-duplicate hyperedges, keeping the first occurrence.
    bool dedupe_edges = false;
};

struct ParseReport {
    Hypergraph hypergraph;
    /// Node ids repeated inside a single hyperedge and collapsed.
    std::size_t duplicate_members = 0;
    /// Hyperedges removed by ParseOptions::dedupe_edges.
    std::size_t duplicate_edges = 0;
};

/// One hyperedge per line; labels separated by commas and/or whitespace;
/// '#' starts a comment line; blank lines are skipped. Labels are interned in
/// order of first appearance.
ParseReport parse_hyperedge_list(std::istream& in, const ParseOptions& options = {});

/// Reads the `nverts` / `simplices` layout: hyperedge k takes the next
/// nverts[k] 1-based node ids. The node count is the largest id seen.
/// Without a labels stream node k is labelled by its 1-based id.
ParseReport parse_simplex_format(std::istream& nverts, std::istream& simplices,
                                 const ParseOptions& options = {});

/// As above, with node labels read one per line (line k names node k+1). A
/// line of the form "<k+1> <name>" is accepted and the leading id dropped.
ParseReport parse_simplex_format(std::istream& nverts, std::istream& simplices,
                                 std::istream& labels, const ParseOptions& options = {});

/// Writes the hyperedge-list text format. Throws InvalidArgument if a label
/// cannot be represented (contains a separator or starts with '#').
void write_hyperedge_list(const Hypergraph& h, std::ostream& out);

/// Removes exact-duplicate hyperedges, keeping first occurrences in order.
Hypergraph remove_duplicate_edges(const Hypergraph& h);

/// Node 0 is the hub; hyperedge k holds the hub plus sizes[k]-1 fresh leaves
/// numbered consecutively. Nodes are labelled v1.., hyperedges e1...
Hypergraph generate_sunflower(std::span<const std::size_t> sizes);

DatasetStats stats(const Hypergraph& h);

}  // namespace htec
