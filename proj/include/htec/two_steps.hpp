#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "htec/bipartite.hpp"

namespace htec {

/// Implicit third-order two-steps tensor of a bipartite graph:
/// a_ijk = 1 iff i~j and j~k, so (A x^2)_i = sum_{j~i} x_j * sum_{k~j} x_k.
///
/// The tensor has sum_j deg(j)^2 nonzeros; it is never formed. One
/// application costs two passes over the adjacency.
class TwoStepsOperator {
public:
    explicit TwoStepsOperator(std::shared_ptr<const BipartiteGraph> graph);
    explicit TwoStepsOperator(BipartiteGraph graph);

    std::size_t dimension() const noexcept { return graph_->size(); }
    const BipartiteGraph& graph() const noexcept { return *graph_; }

    /// y = A x^2. Throws DimensionError on a length mismatch.
    std::vector<double> apply(std::span<const double> x) const;

    /// Allocation-free form; `work` must have dimension() entries.
    /// Summation order is fixed (ascending neighbor index), so reruns are
    /// bit-identical.
    void apply(std::span<const double> x, std::span<double> y, std::span<double> work) const;

private:
    std::shared_ptr<const BipartiteGraph> graph_;
};

/// Literal n x n x n 0/1 tensor, for small oracle checks only.
class DenseTensor {
public:
    static constexpr std::size_t max_dimension = 64;

    explicit DenseTensor(std::size_t n);

    std::size_t dimension() const noexcept { return n_; }
    std::uint8_t at(std::size_t i, std::size_t j, std::size_t k) const { return entries_[index(i, j, k)]; }
    void set(std::size_t i, std::size_t j, std::size_t k, std::uint8_t value) { entries_[index(i, j, k)] = value; }
    std::size_t nonzeros() const;

private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept { return (i * n_ + j) * n_ + k; }

    std::size_t n_;
    std::vector<std::uint8_t> entries_;
};

/// Throws TooLarge when the graph has more than DenseTensor::max_dimension vertices.
DenseTensor materialize_dense(const BipartiteGraph& b);

/// Triple loop over (i, j, k).
std::vector<double> dense_apply(const DenseTensor& t, std::span<const double> x);

/// Sparse nonnegative integer matrix in row-compressed form.
class CountMatrix {
public:
    CountMatrix(std::size_t n, std::vector<std::size_t> offsets, std::vector<Vertex> cols,
                std::vector<std::uint64_t> values);

    std::size_t size() const noexcept { return n_; }
    std::span<const Vertex> row_columns(std::size_t i) const {
        return {cols_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::span<const std::uint64_t> row_values(std::size_t i) const {
        return {values_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    /// Entry (i, j); zero when not stored.
    std::uint64_t at(std::size_t i, std::size_t j) const;

private:
    std::size_t n_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> cols_;
    std::vector<std::uint64_t> values_;
};

/// Representative matrix M(A): m_ij counts the occurrences of j in the two
/// non-root positions of the tensor entries a_{i..} = 1, i.e.
/// m_ij = #{k : i~j~k} + #{l : i~l~j}.
CountMatrix representative_matrix(const BipartiteGraph& b);

struct PrimitivityReport {
    bool weakly_irreducible = false;
    bool positive_diagonal = false;
    bool weakly_primitive = false;

    friend bool operator==(const PrimitivityReport&, const PrimitivityReport&) = default;
};

/// Irreducibility and positive diagonal of M(A), without forming M.
///
/// The support of M is symmetric (reversing a walk i~j~k or i~l~j maps an
/// occurrence counted in m_ij onto one counted in m_ji), so strong
/// connectivity of M's digraph is reachability of every vertex from vertex 0.
/// A 1 x 1 zero matrix is reported reducible.
PrimitivityReport check_weak_primitivity(const BipartiteGraph& b);

}  // namespace htec
