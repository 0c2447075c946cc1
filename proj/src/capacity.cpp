#include "htec/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "htec/error.hpp"

namespace htec {

namespace {

/// Non-owning operator over a graph that outlives the call.
TwoStepsOperator borrowed_operator(const BipartiteGraph& b) {
    return TwoStepsOperator(std::shared_ptr<const BipartiteGraph>(std::shared_ptr<void>{}, &b));
}

}  // namespace

CapacityVector geometric_capacity(const BipartiteGraph& b, std::size_t depth) {
    const auto op = borrowed_operator(b);
    const auto n = b.size();
    std::vector<double> c(n, 1.0);
    std::vector<double> y(n);
    std::vector<double> work(n);
    for (std::size_t s = 0; s < depth; ++s) {
        op.apply(c, y, work);
        for (std::size_t i = 0; i < n; ++i) c[i] = std::sqrt(y[i]);
    }
    return {depth, std::move(c)};
}

CapacityVector linear_capacity(const CsrAdjacency& adjacency, std::size_t depth) {
    if (!adjacency.is_symmetric()) throw InvalidArgument("linear capacity needs a symmetric adjacency");
    const auto n = adjacency.size();
    std::vector<double> cur(n, 1.0);
    std::vector<double> next(n);
    for (std::size_t s = 0; s < depth; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (auto j : adjacency.neighbors(i)) sum += cur[j];
            next[i] = sum;
        }
        cur.swap(next);
    }
    return {depth, std::move(cur)};
}

ExpansionTree enumerate_expansion_tree(const BipartiteGraph& b, Vertex root, std::size_t depth,
                                       std::size_t node_budget) {
    const auto n = b.size();
    if (root >= n) throw InvalidArgument("expansion tree root out of range");
    if (depth > 3) throw TooLarge("literal expansion trees are limited to depth 3");

    // size_t(i) = 1 + sum over walks i~j~k of size_{t-1}(j) + size_{t-1}(k)
    std::vector<double> sizes(n, 1.0);
    for (std::size_t s = 0; s < depth; ++s) {
        std::vector<double> next(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto j : b.neighbors(i)) {
                next[i] += static_cast<double>(b.degree(j)) * sizes[j];
                for (auto k : b.neighbors(j)) next[i] += sizes[k];
            }
        }
        sizes.swap(next);
    }
    if (sizes[root] > static_cast<double>(node_budget)) {
        throw TooLarge("expansion tree would have " + std::to_string(static_cast<std::size_t>(sizes[root])) +
                       " nodes, budget is " + std::to_string(node_budget));
    }

    std::vector<ExpansionTree::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(sizes[root]));
    // Returns the arena index of the subtree rooted at `v`.
    auto build = [&](auto&& self, Vertex v, std::size_t d) -> std::size_t {
        const auto index = nodes.size();
        nodes.push_back({v, d, {}});
        if (d == 0) return index;
        std::vector<std::pair<std::size_t, std::size_t>> children;
        for (auto j : b.neighbors(v)) {
            for (auto k : b.neighbors(j)) {
                const auto left = self(self, j, d - 1);
                const auto right = self(self, k, d - 1);
                children.emplace_back(left, right);
            }
        }
        nodes[index].children = std::move(children);
        return index;
    };
    build(build, root, depth);
    return ExpansionTree(std::move(nodes));
}

double tree_capacity(const ExpansionTree& tree) {
    auto value = [&](auto&& self, std::size_t index) -> double {
        const auto& node = tree.node(index);
        if (node.depth == 0) return 1.0;
        double sum = 0.0;
        for (const auto& [left, right] : node.children) sum += self(self, left) * self(self, right);
        return std::sqrt(sum);
    };
    return value(value, 0);
}

std::vector<double> capacity_convergence(const BipartiteGraph& b, std::size_t t_max, const SolverConfig& cfg) {
    if (t_max < 1) throw InvalidArgument("capacity convergence needs t_max >= 1");
    const auto op = borrowed_operator(b);
    const auto x = htec(op, cfg).combined();

    // C_t / ||C_t|| is computed from the normalized previous vector; the
    // recursion is positively 1-homogeneous so the direction is unchanged and
    // nothing overflows.
    const auto n = b.size();
    std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    std::vector<double> work(n);
    std::vector<double> gaps;
    gaps.reserve(t_max + 1);
    for (std::size_t t = 0;; ++t) {
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(u[i] - x[i]));
        gaps.push_back(gap);
        if (t == t_max) break;

        op.apply(u, y, work);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = std::sqrt(y[i]);
            norm += u[i] * u[i];
        }
        norm = std::sqrt(norm);
        for (auto& v : u) v /= norm;
    }
    return gaps;
}

}  // namespace htec
