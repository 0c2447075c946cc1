#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "htec/bipartite.hpp"
#include "htec/solver.hpp"

namespace htec {

/// Capacities of the depth-t expansion trees rooted at every vertex.
struct CapacityVector {
    std::size_t depth = 0;
    std::vector<double> values;
};

/// C_0 = 1, C_t(i) = sqrt(sum_{j,k} a_ijk C_{t-1}(j) C_{t-1}(k)), evaluated as
/// C_t = (A C_{t-1}^2)^[1/2] through the implicit two-steps operator.
///
/// Values grow roughly like rho^(t/2); for deep trees on dense graphs they
/// overflow, which is why capacity_convergence works with normalized vectors.
CapacityVector geometric_capacity(const BipartiteGraph& b, std::size_t depth);

/// L_0 = 1, L_t = A L_{t-1}: row sums of A^t, i.e. walk counts of length t.
///
/// On a bipartite graph such as B(H) the normalized sequence oscillates
/// between two limits instead of converging; the two-steps recursion above
/// does not have that problem because every two-steps walk returns to the
/// same side.
CapacityVector linear_capacity(const CsrAdjacency& adjacency, std::size_t depth);

/// Fully materialized two-steps expansion tree, stored as an arena.
class ExpansionTree {
public:
    struct Node {
        Vertex vertex = 0;
        std::size_t depth = 0;
        /// (left subtree, right subtree) node indices, one pair per walk
        /// vertex~j~k, ordered by (j, k) ascending.
        std::vector<std::pair<std::size_t, std::size_t>> children;
    };

    explicit ExpansionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

    const Node& root() const { return nodes_.front(); }
    const Node& node(std::size_t index) const { return nodes_.at(index); }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    std::vector<Node> nodes_;
};

/// Literal tree construction, an oracle for geometric_capacity. Throws
/// TooLarge when depth > 3 or the tree would exceed `node_budget` nodes.
ExpansionTree enumerate_expansion_tree(const BipartiteGraph& b, Vertex root, std::size_t depth,
                                       std::size_t node_budget = 1'000'000);

/// Leaves are worth 1; an internal node is worth
/// sqrt(sum over child pairs of left * right).
double tree_capacity(const ExpansionTree& tree);

/// ||C_t / ||C_t||_2 - x||_inf for t = 0..t_max, where x is the HTEC vector.
/// The reference vector is solved with `cfg` (default tol 1e-13).
std::vector<double> capacity_convergence(const BipartiteGraph& b, std::size_t t_max,
                                         const SolverConfig& cfg = {.tol = 1e-13, .max_iter = 10000});

}  // namespace htec
