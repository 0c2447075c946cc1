#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace htec {

/// Kendall tau-b with tie correction, O(n log n) by merge counting.
/// Throws InvalidArgument on length mismatch, n < 2 or NaN entries, and
/// UndefinedCorrelation when either vector is constant.
double kendall_tau(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of mid-ranks. Same error contract as kendall_tau.
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// Mid-ranks (1-based, ties averaged).
std::vector<double> mid_ranks(std::span<const double> v);

/// Items (nodes or hyperedges) with named score columns.
class ScoreTable {
public:
    explicit ScoreTable(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t id) const { return labels_.at(id); }

    /// Adds or replaces a column. Throws DimensionError on a length mismatch.
    void set_column(const std::string& name, std::vector<double> scores);
    /// Throws InvalidArgument for an unknown column.
    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const { return columns_.contains(name); }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::vector<double>> columns_;
};

enum class TopkMode {
    /// The reference column's top-k items.
    Reference,
    /// Union of both columns' top-k items.
    Union,
};

struct CorrelationCurve {
    std::string reference_column;
    std::string other_column;
    std::vector<std::size_t> ks;
    std::vector<double> kendall;
    std::vector<double> spearman;
};

/// Ids sorted by descending score, ties by ascending id.
std::vector<std::size_t> ranking(std::span<const double> scores);

/// For each k, correlates the two columns restricted to the selected top-k ids.
/// Every k must lie in [2, size()].
CorrelationCurve topk_curve(const ScoreTable& table, const std::string& ref_col, const std::string& other_col,
                            std::span<const std::size_t> ks, TopkMode mode = TopkMode::Reference);

/// Labels of the k best items of `col`, best first.
std::vector<std::string> top_labels(const ScoreTable& table, const std::string& col, std::size_t k);

/// CSV "id,label,x,y" ordered by id, full precision.
void scatter_export(const ScoreTable& table, const std::string& x_col, const std::string& y_col, std::ostream& out);

/// CSV "k,kendall,spearman".
void write_curve_csv(const CorrelationCurve& curve, std::ostream& out);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace htec
