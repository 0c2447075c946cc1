#include "cli/report.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "htec/analysis.hpp"
#include "htec/error.hpp"

namespace htec::cli {

using Json = nlohmann::ordered_json;

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const auto c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no);
    fields.push_back(std::move(field));
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("not a number: '" + text + "'", line_no);
    }
    return value;
}

std::optional<double> read_optional(const Json& doc, const char* key) {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    return doc[key].get<double>();
}

}  // namespace

ResultDocument make_document(const Hypergraph& h, const CentralityResult& result) {
    ResultDocument doc;
    doc.method = "htec";
    doc.rho = result.rho;
    doc.lower = result.lower;
    doc.upper = result.upper;
    doc.residual_inf = result.residual_inf;
    doc.iterations = result.iterations;
    doc.node_labels = h.node_labels();
    doc.node_scores = result.x_nodes;
    doc.edge_labels = h.edge_labels();
    doc.edge_scores = result.x_edges;
    return doc;
}

ResultDocument make_document(const Hypergraph& h, const BaselineResult& result) {
    ResultDocument doc;
    doc.method = model_name(result.model);
    doc.iterations = result.iterations;
    doc.node_labels = h.node_labels();
    doc.node_scores = result.x_nodes;
    doc.edge_labels = h.edge_labels();
    doc.edge_scores = result.y_edges;
    return doc;
}

void write_json(const ResultDocument& doc, std::ostream& out) {
    Json j;
    j["method"] = doc.method;
    j["rho"] = optional_number(doc.rho);
    j["lower"] = optional_number(doc.lower);
    j["upper"] = optional_number(doc.upper);
    j["iterations"] = doc.iterations;
    j["residual_inf"] = optional_number(doc.residual_inf);
    auto nodes = Json::array();
    for (std::size_t i = 0; i < doc.node_scores.size(); ++i) {
        nodes.push_back({{"id", i}, {"label", doc.node_labels[i]}, {"score", doc.node_scores[i]}});
    }
    j["nodes"] = std::move(nodes);
    auto edges = Json::array();
    for (std::size_t e = 0; e < doc.edge_scores.size(); ++e) {
        Json item{{"id", e}};
        if (!doc.edge_labels.empty()) item["label"] = doc.edge_labels[e];
        item["score"] = doc.edge_scores[e];
        edges.push_back(std::move(item));
    }
    j["edges"] = std::move(edges);
    out << j.dump(2) << '\n';
}

void write_csv(const ResultDocument& doc, std::ostream& out) {
    out << "kind,id,label,score\n";
    for (std::size_t i = 0; i < doc.node_scores.size(); ++i) {
        out << "node," << i << ',' << csv_field(doc.node_labels[i]) << ',' << format_double(doc.node_scores[i])
            << '\n';
    }
    for (std::size_t e = 0; e < doc.edge_scores.size(); ++e) {
        out << "edge," << e << ',' << (doc.edge_labels.empty() ? std::string() : csv_field(doc.edge_labels[e]))
            << ',' << format_double(doc.edge_scores[e]) << '\n';
    }
}

ResultDocument read_json(std::istream& in, const std::string& source) {
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    try {
        ResultDocument doc;
        doc.method = j.value("method", std::string("unknown"));
        doc.rho = read_optional(j, "rho");
        doc.lower = read_optional(j, "lower");
        doc.upper = read_optional(j, "upper");
        doc.residual_inf = read_optional(j, "residual_inf");
        doc.iterations = j.value("iterations", std::size_t{0});
        const auto& nodes = j.at("nodes");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].at("id").get<std::size_t>() != i) throw ParseError(source + ": node ids are not dense");
            doc.node_labels.push_back(nodes[i].at("label").get<std::string>());
            doc.node_scores.push_back(nodes[i].at("score").get<double>());
        }
        const auto& edges = j.at("edges");
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].at("id").get<std::size_t>() != e) throw ParseError(source + ": edge ids are not dense");
            if (edges[e].contains("label")) doc.edge_labels.push_back(edges[e]["label"].get<std::string>());
            doc.edge_scores.push_back(edges[e].at("score").get<double>());
        }
        if (!doc.edge_labels.empty() && doc.edge_labels.size() != doc.edge_scores.size()) {
            throw ParseError(source + ": some edges lack labels");
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
}

ResultDocument read_csv(std::istream& in, const std::string& source) {
    ResultDocument doc;
    doc.method = "unknown";
    std::string line;
    std::size_t line_no = 0;
    bool any_edge_label = false;
    try {
        if (!std::getline(in, line) || split_csv_line(line, 1) != std::vector<std::string>{"kind", "id", "label", "score"}) {
            throw ParseError("expected header kind,id,label,score", 1);
        }
        line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto fields = split_csv_line(line, line_no);
            if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
            const auto id = static_cast<std::size_t>(parse_number(fields[1], line_no));
            const auto score = parse_number(fields[3], line_no);
            if (fields[0] == "node") {
                if (id != doc.node_scores.size()) throw ParseError("node ids are not dense", line_no);
                doc.node_labels.push_back(fields[2]);
                doc.node_scores.push_back(score);
            } else if (fields[0] == "edge") {
                if (id != doc.edge_scores.size()) throw ParseError("edge ids are not dense", line_no);
                any_edge_label = any_edge_label || !fields[2].empty();
                doc.edge_labels.push_back(fields[2]);
                doc.edge_scores.push_back(score);
            } else {
                throw ParseError("unknown kind '" + fields[0] + "'", line_no);
            }
        }
    } catch (const ParseError& e) {
        throw ParseError(source + ": " + e.what(), 0);
    }
    if (!any_edge_label) doc.edge_labels.clear();
    return doc;
}

void write_stats_json(const DatasetStats& s, std::ostream& out) {
    Json j;
    j["num_nodes"] = s.num_nodes;
    j["num_hyperedges"] = s.num_hyperedges;
    j["avg_cardinality"] = s.avg_cardinality;
    j["max_cardinality"] = s.max_cardinality;
    out << j.dump(2) << '\n';
}

void write_primitivity_json(const PrimitivityReport& report, bool connected, std::ostream& out) {
    Json j;
    j["connected"] = connected;
    j["weakly_irreducible"] = report.weakly_irreducible;
    j["positive_diagonal"] = report.positive_diagonal;
    j["weakly_primitive"] = report.weakly_primitive;
    out << j.dump(2) << '\n';
}

}  // namespace htec::cli
