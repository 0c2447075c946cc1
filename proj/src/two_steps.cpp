#include "htec/two_steps.hpp"

#include <algorithm>
#include <queue>

#include "htec/error.hpp"

namespace htec {

TwoStepsOperator::TwoStepsOperator(std::shared_ptr<const BipartiteGraph> graph) : graph_(std::move(graph)) {
    if (!graph_) throw InvalidArgument("two-steps operator needs a graph");
}

TwoStepsOperator::TwoStepsOperator(BipartiteGraph graph)
    : graph_(std::make_shared<const BipartiteGraph>(std::move(graph))) {}

std::vector<double> TwoStepsOperator::apply(std::span<const double> x) const {
    std::vector<double> y(dimension());
    std::vector<double> work(dimension());
    apply(x, y, work);
    return y;
}

void TwoStepsOperator::apply(std::span<const double> x, std::span<double> y, std::span<double> work) const {
    const auto n = dimension();
    if (x.size() != n) throw DimensionError(n, x.size());
    if (y.size() != n) throw DimensionError(n, y.size());
    if (work.size() != n) throw DimensionError(n, work.size());

    const auto& g = *graph_;
    // work_j = x_j * sum_{k~j} x_k
    for (std::size_t j = 0; j < n; ++j) {
        double inner = 0.0;
        for (auto k : g.neighbors(j)) inner += x[k];
        work[j] = x[j] * inner;
    }
    // y_i = sum_{j~i} work_j
    for (std::size_t i = 0; i < n; ++i) {
        double outer = 0.0;
        for (auto j : g.neighbors(i)) outer += work[j];
        y[i] = outer;
    }
}

DenseTensor::DenseTensor(std::size_t n) : n_(n) {
    if (n > max_dimension) {
        throw TooLarge("dense two-steps tensor limited to n <= " + std::to_string(max_dimension) + ", got " +
                       std::to_string(n));
    }
    entries_.assign(n * n * n, 0);
}

std::size_t DenseTensor::nonzeros() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](auto v) { return v != 0; }));
}

DenseTensor materialize_dense(const BipartiteGraph& b) {
    DenseTensor t(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (auto j : b.neighbors(i)) {
            for (auto k : b.neighbors(j)) t.set(i, j, k, 1);
        }
    }
    return t;
}

std::vector<double> dense_apply(const DenseTensor& t, std::span<const double> x) {
    const auto n = t.dimension();
    if (x.size() != n) throw DimensionError(n, x.size());
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (t.at(i, j, k) != 0) sum += x[j] * x[k];
            }
        }
        y[i] = sum;
    }
    return y;
}

CountMatrix::CountMatrix(std::size_t n, std::vector<std::size_t> offsets, std::vector<Vertex> cols,
                         std::vector<std::uint64_t> values)
    : n_(n), offsets_(std::move(offsets)), cols_(std::move(cols)), values_(std::move(values)) {
    if (offsets_.size() != n_ + 1 || cols_.size() != values_.size() || offsets_.back() != cols_.size()) {
        throw InvalidArgument("malformed count matrix");
    }
}

std::uint64_t CountMatrix::at(std::size_t i, std::size_t j) const {
    const auto cols = row_columns(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Vertex>(j));
    if (it == cols.end() || *it != j) return 0;
    return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

CountMatrix representative_matrix(const BipartiteGraph& b) {
    const auto n = b.size();
    if (n == 0) throw InvalidArgument("representative matrix of an empty graph");

    std::vector<std::size_t> offsets{0};
    std::vector<Vertex> cols;
    std::vector<std::uint64_t> values;
    std::vector<std::uint64_t> acc(n, 0);
    std::vector<Vertex> touched;

    auto bump = [&](Vertex j, std::uint64_t amount) {
        if (acc[j] == 0) touched.push_back(j);
        acc[j] += amount;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : b.neighbors(i)) {
            // j in the middle slot: one walk i~j~k per neighbor k of j.
            bump(j, b.degree(j));
            // k in the last slot: walk i~j~k.
            for (auto k : b.neighbors(j)) bump(k, 1);
        }
        std::sort(touched.begin(), touched.end());
        for (auto j : touched) {
            cols.push_back(j);
            values.push_back(acc[j]);
            acc[j] = 0;
        }
        touched.clear();
        offsets.push_back(cols.size());
    }
    return CountMatrix(n, std::move(offsets), std::move(cols), std::move(values));
}

PrimitivityReport check_weak_primitivity(const BipartiteGraph& b) {
    const auto n = b.size();
    if (n == 0) throw InvalidArgument("primitivity of an empty graph");

    PrimitivityReport report;
    // m_ii = deg(i): one walk i~l~i per neighbor l.
    report.positive_diagonal = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (b.degree(i) == 0) {
            report.positive_diagonal = false;
            break;
        }
    }

    if (n == 1) {
        report.weakly_irreducible = report.positive_diagonal;
    } else {
        // m_ij > 0 iff j~i or i and j share a neighbor. Once a middle vertex
        // has been expanded all its neighbors are reached, so each is expanded
        // at most once and the search is linear in the adjacency size.
        std::vector<char> reached(n, 0);
        std::vector<char> expanded(n, 0);
        std::queue<std::size_t> frontier;
        std::size_t count = 1;
        reached[0] = 1;
        frontier.push(0);
        auto visit = [&](std::size_t v) {
            if (!reached[v]) {
                reached[v] = 1;
                ++count;
                frontier.push(v);
            }
        };
        while (!frontier.empty()) {
            const auto i = frontier.front();
            frontier.pop();
            for (auto j : b.neighbors(i)) {
                visit(j);
                if (expanded[j]) continue;
                expanded[j] = 1;
                for (auto k : b.neighbors(j)) visit(k);
            }
        }
        report.weakly_irreducible = count == n;
    }
    report.weakly_primitive = report.weakly_irreducible && report.positive_diagonal;
    return report;
}

}  // namespace htec
