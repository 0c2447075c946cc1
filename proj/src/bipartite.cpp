#include "htec/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "htec/error.hpp"

namespace htec {

CsrAdjacency::CsrAdjacency(std::vector<std::size_t> offsets, std::vector<Vertex> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets)) {
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != targets_.size() ||
        !std::is_sorted(offsets_.begin(), offsets_.end())) {
        throw InvalidArgument("malformed CSR offsets");
    }
    const auto n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = neighbors(i);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] >= n) throw InvalidArgument("CSR target out of range");
            if (k > 0 && row[k] <= row[k - 1]) throw InvalidArgument("CSR row not strictly increasing");
        }
    }
}

CsrAdjacency CsrAdjacency::from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::vector<Vertex>> rows(n);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
        if (a == b) throw InvalidArgument("self loop");
        rows[a].push_back(b);
        rows[b].push_back(a);
    }
    std::vector<std::size_t> offsets{0};
    std::vector<Vertex> targets;
    targets.reserve(2 * edges.size());
    for (auto& row : rows) {
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) throw InvalidArgument("repeated edge");
        targets.insert(targets.end(), row.begin(), row.end());
        offsets.push_back(targets.size());
    }
    return CsrAdjacency(std::move(offsets), std::move(targets));
}

bool CsrAdjacency::is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i) {
        for (auto j : neighbors(i)) {
            const auto back = neighbors(j);
            if (!std::binary_search(back.begin(), back.end(), static_cast<Vertex>(i))) return false;
        }
    }
    return true;
}

BipartiteGraph::BipartiteGraph(std::size_t n_nodes, std::size_t n_edges, CsrAdjacency adjacency)
    : n_nodes_(n_nodes), n_edges_(n_edges), adj_(std::move(adjacency)) {
    if (adj_.size() != n_nodes_ + n_edges_) throw DimensionError(n_nodes_ + n_edges_, adj_.size());
}

BipartiteGraph build_incidence_bipartite(const Hypergraph& h) {
    const auto nv = h.num_nodes();
    const auto ne = h.num_edges();
    if (nv + ne > std::numeric_limits<Vertex>::max()) throw TooLarge("hypergraph exceeds 32-bit vertex ids");

    const auto deg = h.degrees();
    std::vector<std::size_t> offsets(nv + ne + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offsets[v + 1] = offsets[v] + deg[v];
    for (std::size_t e = 0; e < ne; ++e) offsets[nv + e + 1] = offsets[nv + e] + h.cardinality(e);

    std::vector<Vertex> targets(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.begin() + static_cast<std::ptrdiff_t>(nv));
    for (std::size_t e = 0; e < ne; ++e) {
        const auto ev = static_cast<Vertex>(nv + e);
        auto out = offsets[nv + e];
        // Hyperedges are visited in ascending order, so node rows come out sorted.
        for (auto v : h.edge(static_cast<EdgeId>(e))) {
            targets[fill[v]++] = ev;
            targets[out++] = v;
        }
    }
    return BipartiteGraph(nv, ne, CsrAdjacency(std::move(offsets), std::move(targets)));
}

std::vector<std::size_t> connected_components(const BipartiteGraph& b) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> comp(b.size(), unset);
    std::size_t next = 0;
    std::queue<std::size_t> frontier;
    for (std::size_t s = 0; s < b.size(); ++s) {
        if (comp[s] != unset) continue;
        comp[s] = next;
        frontier.push(s);
        while (!frontier.empty()) {
            const auto i = frontier.front();
            frontier.pop();
            for (auto j : b.neighbors(i)) {
                if (comp[j] == unset) {
                    comp[j] = next;
                    frontier.push(j);
                }
            }
        }
        ++next;
    }
    return comp;
}

bool is_connected(const BipartiteGraph& b) {
    if (b.size() == 0) throw InvalidArgument("connectivity of an empty graph");
    std::vector<char> seen(b.size(), 0);
    std::queue<std::size_t> frontier;
    seen[0] = 1;
    frontier.push(0);
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const auto i = frontier.front();
        frontier.pop();
        for (auto j : b.neighbors(i)) {
            if (!seen[j]) {
                seen[j] = 1;
                ++reached;
                frontier.push(j);
            }
        }
    }
    return reached == b.size();
}

Hypergraph largest_component(const Hypergraph& h) {
    if (h.num_nodes() == 0) throw InvalidArgument("largest component of a hypergraph without nodes");
    const auto b = build_incidence_bipartite(h);
    const auto comp = connected_components(b);

    // Components are numbered by smallest member and every component holds a
    // node (hyperedges are non-empty), so the first maximum wins ties.
    const auto num_comp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(num_comp, 0);
    for (auto c : comp) ++sizes[c];
    const auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    const auto nv = h.num_nodes();
    std::vector<NodeId> remap(nv, 0);
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < nv; ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<NodeId>(labels.size());
            labels.push_back(h.node_label(static_cast<NodeId>(v)));
        }
    }
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::string> edge_labels;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        if (comp[nv + e] != best) continue;
        std::vector<NodeId> edge;
        edge.reserve(h.cardinality(static_cast<EdgeId>(e)));
        for (auto v : h.edge(static_cast<EdgeId>(e))) edge.push_back(remap[v]);
        edges.push_back(std::move(edge));
        if (h.has_edge_labels()) edge_labels.push_back(h.edge_labels()[e]);
    }
    return Hypergraph(std::move(labels), std::move(edges), std::move(edge_labels));
}

}  // namespace htec
