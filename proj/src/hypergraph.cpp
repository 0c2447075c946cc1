#include "htec/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "htec/error.hpp"

namespace htec {

namespace {

bool is_separator(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\v\f");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\v\f");
    return s.substr(first, last - first + 1);
}

/// Sorts and collapses repeated ids, returning how many were dropped.
std::size_t normalize_edge(std::vector<NodeId>& edge) {
    std::sort(edge.begin(), edge.end());
    const auto before = edge.size();
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    return before - edge.size();
}

ParseReport finish(std::vector<std::string> labels, std::vector<std::vector<NodeId>> edges,
                   std::size_t duplicate_members, const ParseOptions& options) {
    ParseReport report{Hypergraph(std::move(labels), std::move(edges)), duplicate_members, 0};
    if (options.dedupe_edges) {
        const auto before = report.hypergraph.num_edges();
        report.hypergraph = remove_duplicate_edges(report.hypergraph);
        report.duplicate_edges = before - report.hypergraph.num_edges();
    }
    return report;
}

/// Reads whitespace-separated positive integers, tracking line numbers.
std::vector<long long> read_integers(std::istream& in, std::string_view what, bool allow_zero) {
    std::vector<long long> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = line;
        while (true) {
            rest = trim(rest);
            if (rest.empty()) break;
            const auto end = std::min(rest.find_first_of(" \t\r\n\v\f"), rest.size());
            const auto token = rest.substr(0, end);
            long long value = 0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || ptr != token.data() + token.size()) {
                throw ParseError(std::string(what) + ": not an integer: '" + std::string(token) + "'",
                                 line_no);
            }
            if (value < 0 || (value == 0 && !allow_zero)) {
                throw ParseError(std::string(what) + ": id must be positive, got " + std::to_string(value),
                                 line_no);
            }
            values.push_back(value);
            rest = rest.substr(end);
        }
    }
    return values;
}

ParseReport parse_simplex_impl(std::istream& nverts_in, std::istream& simplices_in,
                               std::istream* labels_in, const ParseOptions& options) {
    const auto counts = read_integers(nverts_in, "nverts", true);
    const auto ids = read_integers(simplices_in, "simplices", false);
    if (counts.empty()) throw ParseError("nverts: no hyperedges");

    const auto total = std::accumulate(counts.begin(), counts.end(), 0LL);
    if (total != static_cast<long long>(ids.size())) {
        throw ParseError("nverts sums to " + std::to_string(total) + " but simplices holds " +
                         std::to_string(ids.size()) + " ids");
    }

    std::vector<std::vector<NodeId>> edges;
    edges.reserve(counts.size());
    std::size_t duplicate_members = 0;
    long long max_id = 0;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) throw ParseError("nverts: hyperedge " + std::to_string(k + 1) + " is empty", k + 1);
        std::vector<NodeId> edge;
        edge.reserve(static_cast<std::size_t>(counts[k]));
        for (long long c = 0; c < counts[k]; ++c, ++pos) {
            if (ids[pos] > static_cast<long long>(UINT32_MAX)) throw ParseError("simplices: id too large");
            max_id = std::max(max_id, ids[pos]);
            edge.push_back(static_cast<NodeId>(ids[pos] - 1));
        }
        duplicate_members += normalize_edge(edge);
        edges.push_back(std::move(edge));
    }

    const auto n = static_cast<std::size_t>(max_id);
    std::vector<std::string> labels(n);
    if (labels_in != nullptr) {
        std::string line;
        std::size_t k = 0;
        while (k < n && std::getline(*labels_in, line)) {
            auto text = trim(line);
            // "<id> <name>" layout: drop the id when it matches the line.
            const auto space = text.find_first_of(" \t");
            if (space != std::string_view::npos) {
                long long id = 0;
                const auto head = text.substr(0, space);
                const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), id);
                if (ec == std::errc{} && ptr == head.data() + head.size() &&
                    id == static_cast<long long>(k + 1)) {
                    text = trim(text.substr(space));
                }
            }
            labels[k] = std::string(text);
            ++k;
        }
        if (k < n) {
            throw ParseError("labels: expected " + std::to_string(n) + " lines, got " + std::to_string(k));
        }
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i].empty() || !seen.insert(labels[i]).second) {
                throw ParseError("labels: empty or repeated label '" + labels[i] + "'", i + 1);
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i + 1);
    }
    return finish(std::move(labels), std::move(edges), duplicate_members, options);
}

}  // namespace

Hypergraph::Hypergraph(std::vector<std::string> node_labels, std::vector<std::vector<NodeId>> hyperedges,
                       std::vector<std::string> edge_labels)
    : node_labels_(std::move(node_labels)), edges_(std::move(hyperedges)), edge_labels_(std::move(edge_labels)) {
    const auto n = node_labels_.size();
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.empty()) throw InvalidArgument("hyperedge " + std::to_string(e) + " is empty");
        for (std::size_t i = 0; i < edge.size(); ++i) {
            if (edge[i] >= n) {
                throw InvalidArgument("hyperedge " + std::to_string(e) + " references node " +
                                      std::to_string(edge[i]) + " >= " + std::to_string(n));
            }
            if (i > 0 && edge[i] <= edge[i - 1]) {
                throw InvalidArgument("hyperedge " + std::to_string(e) + " is not strictly increasing");
            }
        }
    }
    std::unordered_set<std::string_view> seen;
    seen.reserve(n);
    for (const auto& label : node_labels_) {
        if (!seen.insert(label).second) throw InvalidArgument("repeated node label '" + label + "'");
    }
    if (!edge_labels_.empty() && edge_labels_.size() != edges_.size()) {
        throw InvalidArgument("expected " + std::to_string(edges_.size()) + " edge labels, got " +
                              std::to_string(edge_labels_.size()));
    }
}

std::vector<std::size_t> Hypergraph::degrees() const {
    std::vector<std::size_t> deg(num_nodes(), 0);
    for (const auto& edge : edges_) {
        for (auto v : edge) ++deg[v];
    }
    return deg;
}

std::size_t Hypergraph::num_incidences() const noexcept {
    std::size_t total = 0;
    for (const auto& edge : edges_) total += edge.size();
    return total;
}

ParseReport parse_hyperedge_list(std::istream& in, const ParseOptions& options) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::vector<NodeId>> edges;
    std::size_t duplicate_members = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;

        std::vector<NodeId> edge;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && is_separator(text[i])) ++i;
            const auto start = i;
            while (i < text.size() && !is_separator(text[i])) ++i;
            if (start == i) break;
            std::string label(text.substr(start, i - start));
            auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
            if (inserted) labels.push_back(std::move(label));
            edge.push_back(it->second);
        }
        if (edge.empty()) throw ParseError("line holds only separators", line_no);
        duplicate_members += normalize_edge(edge);
        edges.push_back(std::move(edge));
    }
    if (edges.empty()) throw ParseError("no hyperedges in input");
    return finish(std::move(labels), std::move(edges), duplicate_members, options);
}

ParseReport parse_simplex_format(std::istream& nverts, std::istream& simplices, const ParseOptions& options) {
    return parse_simplex_impl(nverts, simplices, nullptr, options);
}

ParseReport parse_simplex_format(std::istream& nverts, std::istream& simplices, std::istream& labels,
                                 const ParseOptions& options) {
    return parse_simplex_impl(nverts, simplices, &labels, options);
}

void write_hyperedge_list(const Hypergraph& h, std::ostream& out) {
    for (const auto& label : h.node_labels()) {
        if (label.empty() || label.front() == '#' ||
            std::any_of(label.begin(), label.end(), is_separator)) {
            throw InvalidArgument("label '" + label + "' cannot be written as a hyperedge-list token");
        }
    }
    for (const auto& edge : h.edges()) {
        for (std::size_t i = 0; i < edge.size(); ++i) {
            if (i > 0) out << ' ';
            out << h.node_label(edge[i]);
        }
        out << '\n';
    }
}

Hypergraph remove_duplicate_edges(const Hypergraph& h) {
    std::set<std::vector<NodeId>> seen;
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::string> edge_labels;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
        if (!seen.insert(h.edges()[e]).second) continue;
        edges.push_back(h.edges()[e]);
        if (h.has_edge_labels()) edge_labels.push_back(h.edge_labels()[e]);
    }
    return Hypergraph(h.node_labels(), std::move(edges), std::move(edge_labels));
}

Hypergraph generate_sunflower(std::span<const std::size_t> sizes) {
    if (sizes.empty()) throw InvalidArgument("sunflower needs at least one hyperedge");
    std::vector<std::vector<NodeId>> edges;
    std::vector<std::string> edge_labels;
    NodeId next = 1;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] < 2) throw InvalidArgument("sunflower hyperedge sizes must be >= 2");
        std::vector<NodeId> edge{0};
        for (std::size_t j = 1; j < sizes[k]; ++j) edge.push_back(next++);
        edges.push_back(std::move(edge));
        edge_labels.push_back("e" + std::to_string(k + 1));
    }
    std::vector<std::string> labels;
    labels.reserve(next);
    for (NodeId v = 0; v < next; ++v) labels.push_back("v" + std::to_string(v + 1));
    return Hypergraph(std::move(labels), std::move(edges), std::move(edge_labels));
}

DatasetStats stats(const Hypergraph& h) {
    if (h.num_edges() == 0) throw InvalidArgument("stats of a hypergraph without hyperedges");
    DatasetStats s;
    s.num_nodes = h.num_nodes();
    s.num_hyperedges = h.num_edges();
    s.avg_cardinality = static_cast<double>(h.num_incidences()) / static_cast<double>(h.num_edges());
    for (const auto& edge : h.edges()) s.max_cardinality = std::max(s.max_cardinality, edge.size());
    return s;
}

}  // namespace htec
