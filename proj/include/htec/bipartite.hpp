#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "htec/hypergraph.hpp"

namespace htec {

using Vertex = std::uint32_t;

/// Compressed adjacency of an undirected graph: neighbors of vertex i are
/// targets[offsets[i] .. offsets[i+1]), sorted ascending.
class CsrAdjacency {
public:
    CsrAdjacency() : offsets_{0} {}
    CsrAdjacency(std::vector<std::size_t> offsets, std::vector<Vertex> targets);

    /// Builds a symmetric adjacency from undirected edge pairs. Throws
    /// InvalidArgument on self loops, repeated pairs, or out-of-range ids.
    static CsrAdjacency from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::size_t num_arcs() const noexcept { return targets_.size(); }

    std::span<const Vertex> neighbors(std::size_t i) const {
        return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t degree(std::size_t i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

    bool is_symmetric() const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

/// The incidence bipartite graph B(H). Vertices [0, n_v) are the nodes of H,
/// vertex n_v + e is hyperedge e.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t n_nodes, std::size_t n_edges, CsrAdjacency adjacency);

    std::size_t num_nodes() const noexcept { return n_nodes_; }
    std::size_t num_edges() const noexcept { return n_edges_; }
    std::size_t size() const noexcept { return n_nodes_ + n_edges_; }

    /// Number of node-hyperedge incidences (undirected bipartite edges).
    std::size_t num_links() const noexcept { return adj_.num_arcs() / 2; }

    std::span<const Vertex> neighbors(std::size_t i) const { return adj_.neighbors(i); }
    std::size_t degree(std::size_t i) const noexcept { return adj_.degree(i); }
    const CsrAdjacency& adjacency() const noexcept { return adj_; }

    bool is_node(std::size_t i) const noexcept { return i < n_nodes_; }
    Vertex edge_vertex(EdgeId e) const noexcept { return static_cast<Vertex>(n_nodes_ + e); }

private:
    std::size_t n_nodes_ = 0;
    std::size_t n_edges_ = 0;
    CsrAdjacency adj_;
};

BipartiteGraph build_incidence_bipartite(const Hypergraph& h);

/// True iff a breadth-first search from vertex 0 reaches every vertex.
/// Throws InvalidArgument on the empty graph.
bool is_connected(const BipartiteGraph& b);

/// Component index of every vertex of `b`, numbered in order of smallest member.
std::vector<std::size_t> connected_components(const BipartiteGraph& b);

/// Sub-hypergraph on the largest connected component of B(H), measured in
/// bipartite vertices; ties go to the component with the smallest node id.
/// Surviving nodes and hyperedges keep their relative order and labels.
Hypergraph largest_component(const Hypergraph& h);

}  // namespace htec
