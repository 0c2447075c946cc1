#include "htec/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>

#include "htec/error.hpp"

namespace htec {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("correlation of vectors with different lengths");
    if (a.size() < 2) throw InvalidArgument("correlation needs at least two items");
    auto has_nan = [](std::span<const double> v) {
        return std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
    };
    if (has_nan(a) || has_nan(b)) throw InvalidArgument("correlation of vectors containing NaN");
}

/// Sum over runs of equal values of len*(len-1)/2; `v` must be sorted.
template <class It, class Eq>
std::int64_t tied_pairs(It first, It last, Eq eq) {
    std::int64_t total = 0;
    while (first != last) {
        auto run_end = std::next(first);
        while (run_end != last && eq(*first, *run_end)) ++run_end;
        const auto len = static_cast<std::int64_t>(std::distance(first, run_end));
        total += len * (len - 1) / 2;
        first = run_end;
    }
    return total;
}

/// Stable merge sort of `v`, returning the number of strict inversions.
std::int64_t count_inversions(std::vector<double>& v) {
    std::vector<double> buffer(v.size());
    std::int64_t swaps = 0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
            const auto mid = std::min(lo + width, v.size());
            const auto hi = std::min(lo + 2 * width, v.size());
            auto i = lo;
            auto j = mid;
            auto out = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    swaps += static_cast<std::int64_t>(mid - i);
                    buffer[out++] = v[j++];
                } else {
                    buffer[out++] = v[i++];
                }
            }
            while (i < mid) buffer[out++] = v[i++];
            while (j < hi) buffer[out++] = v[j++];
        }
        v.swap(buffer);
    }
    return swaps;
}

std::vector<std::size_t> select_topk(const std::vector<std::size_t>& ref_rank,
                                     const std::vector<std::size_t>& other_rank, std::size_t k, TopkMode mode) {
    std::vector<std::size_t> ids(ref_rank.begin(), ref_rank.begin() + static_cast<std::ptrdiff_t>(k));
    if (mode == TopkMode::Union) {
        ids.insert(ids.end(), other_rank.begin(), other_rank.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    return ids;
}

}  // namespace

double kendall_tau(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    const auto n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a[i] < a[j] || (a[i] == a[j] && b[i] < b[j]); });

    const auto n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const auto n1 = tied_pairs(order.begin(), order.end(), [&](auto i, auto j) { return a[i] == a[j]; });
    const auto n3 = tied_pairs(order.begin(), order.end(),
                               [&](auto i, auto j) { return a[i] == a[j] && b[i] == b[j]; });

    std::vector<double> bs(n);
    for (std::size_t i = 0; i < n; ++i) bs[i] = b[order[i]];
    const auto swaps = count_inversions(bs);
    const auto n2 = tied_pairs(bs.begin(), bs.end(), [](double x, double y) { return x == y; });

    if (n1 == n0 || n2 == n0) throw UndefinedCorrelation("kendall tau of a constant vector");
    const auto concordant_minus_discordant = n0 - n1 - n2 + n3 - 2 * swaps;
    return static_cast<double>(concordant_minus_discordant) /
           std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

std::vector<double> mid_ranks(std::span<const double> v) {
    const auto n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        auto j = i + 1;
        while (j < n && v[order[j]] == v[order[i]]) ++j;
        // positions i..j-1 share the average of ranks i+1..j
        const auto avg = 0.5 * static_cast<double>(i + 1 + j);
        for (auto k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b);
    const auto ra = mid_ranks(a);
    const auto rb = mid_ranks(b);
    const auto n = static_cast<double>(a.size());
    const auto mean = (n + 1.0) / 2.0;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const auto da = ra[i] - mean;
        const auto db = rb[i] - mean;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw UndefinedCorrelation("spearman rho of a constant vector");
    return sab / std::sqrt(saa * sbb);
}

ScoreTable::ScoreTable(std::vector<std::string> labels) : labels_(std::move(labels)) {}

void ScoreTable::set_column(const std::string& name, std::vector<double> scores) {
    if (scores.size() != labels_.size()) throw DimensionError(labels_.size(), scores.size());
    columns_[name] = std::move(scores);
}

const std::vector<double>& ScoreTable::column(const std::string& name) const {
    const auto it = columns_.find(name);
    if (it == columns_.end()) throw InvalidArgument("unknown score column '" + name + "'");
    return it->second;
}

std::vector<std::size_t> ranking(std::span<const double> scores) {
    std::vector<std::size_t> ids(scores.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](auto i, auto j) { return scores[i] > scores[j]; });
    return ids;
}

CorrelationCurve topk_curve(const ScoreTable& table, const std::string& ref_col, const std::string& other_col,
                            std::span<const std::size_t> ks, TopkMode mode) {
    const auto& ref = table.column(ref_col);
    const auto& other = table.column(other_col);
    const auto ref_rank = ranking(ref);
    const auto other_rank = ranking(other);

    CorrelationCurve curve{ref_col, other_col, {}, {}, {}};
    for (auto k : ks) {
        if (k < 2 || k > table.size()) {
            throw InvalidArgument("top-k size " + std::to_string(k) + " outside [2, " + std::to_string(table.size()) +
                                  "]");
        }
        const auto ids = select_topk(ref_rank, other_rank, k, mode);
        std::vector<double> a;
        std::vector<double> b;
        a.reserve(ids.size());
        b.reserve(ids.size());
        for (auto id : ids) {
            a.push_back(ref[id]);
            b.push_back(other[id]);
        }
        curve.ks.push_back(k);
        curve.kendall.push_back(kendall_tau(a, b));
        curve.spearman.push_back(spearman_rho(a, b));
    }
    return curve;
}

std::vector<std::string> top_labels(const ScoreTable& table, const std::string& col, std::size_t k) {
    const auto& scores = table.column(col);
    if (k > table.size()) throw InvalidArgument("top-k larger than the table");
    const auto order = ranking(scores);
    std::vector<std::string> labels;
    labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) labels.push_back(table.label(order[i]));
    return labels;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string quoted = "\"";
    for (auto c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void scatter_export(const ScoreTable& table, const std::string& x_col, const std::string& y_col, std::ostream& out) {
    const auto& xs = table.column(x_col);
    const auto& ys = table.column(y_col);
    out << "id,label,x,y\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << i << ',' << csv_field(table.label(i)) << ',' << format_double(xs[i]) << ',' << format_double(ys[i])
            << '\n';
    }
}

void write_curve_csv(const CorrelationCurve& curve, std::ostream& out) {
    out << "k,kendall,spearman\n";
    for (std::size_t i = 0; i < curve.ks.size(); ++i) {
        out << curve.ks[i] << ',' << format_double(curve.kendall[i]) << ',' << format_double(curve.spearman[i])
            << '\n';
    }
}

}  // namespace htec
