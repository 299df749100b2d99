#include "eg/document.hpp"

#include "eg/error.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>

namespace eg {

namespace {

using json = nlohmann::ordered_json;

// SAX-to-DOM builder that never goes through double: integer tokens land as
// integers, every other numeric token is kept as its raw text. Rational
// fields later accept both.
class ExactBuilder : public nlohmann::json_sax<json> {
public:
    json root;

    bool null() override { return add(json(nullptr)), true; }
    bool boolean(bool v) override { return add(json(v)), true; }
    bool number_integer(number_integer_t v) override { return add(json(v)), true; }
    bool number_unsigned(number_unsigned_t v) override { return add(json(v)), true; }
    bool number_float(number_float_t, const string_t& raw) override { return add(json(raw)), true; }
    bool string(string_t& v) override { return add(json(v)), true; }
    bool binary(binary_t&) override {
        throw Error(ErrorCode::syntax, "binary values are not part of any document format");
    }
    bool start_object(std::size_t) override {
        stack_.push_back(add(json::object()));
        return true;
    }
    bool key(string_t& k) override { return key_ = k, true; }
    bool end_object() override { return stack_.pop_back(), true; }
    bool start_array(std::size_t) override {
        stack_.push_back(add(json::array()));
        return true;
    }
    bool end_array() override { return stack_.pop_back(), true; }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw Error(ErrorCode::syntax,
                    "byte " + std::to_string(position) + ": " + ex.what());
    }

private:
    json* add(json v) {
        if (stack_.empty()) {
            root = std::move(v);
            return &root;
        }
        json& top = *stack_.back();
        if (top.is_array()) {
            top.push_back(std::move(v));
            return &top.back();
        }
        top[key_] = std::move(v);
        return &top[key_];
    }

    std::vector<json*> stack_;
    std::string key_;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::syntax, where + ": " + what);
}

const json& field(const json& obj, const std::string& where, const std::string& name) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) fail(where, "missing field '" + name + "'");
    return *it;
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Rat get_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
    if (j.is_string()) {
        try {
            return rat_from_string(j.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a number or a rational string");
}

std::vector<Rat> rat_list(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of numbers");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_rat(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

LabelSet parse_labels(const json& obj, const std::string& where) {
    return LabelSet(string_list(field(obj, where, "labels"), where + ".labels"));
}

ProbabilityTable parse_probability_table(const json& obj) {
    LabelSet labels = parse_labels(obj, "probability_table");
    auto states = string_list(field(obj, "probability_table", "states"), "states");
    const json& p = field(obj, "probability_table", "p");
    if (!p.is_array()) fail("p", "expected an array of rows");
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < p.size(); ++i)
        rows.push_back(rat_list(p[i], "p[" + std::to_string(i) + "]"));
    auto d = rat_list(field(obj, "probability_table", "d"), "d");
    return ProbabilityTable(std::move(labels), std::move(states), std::move(rows), std::move(d));
}

ExpertGraph parse_expert_graph(const json& obj, const std::string& where) {
    LabelSet labels = parse_labels(obj, where);
    const json& edges = field(obj, where, "edges");
    if (!edges.is_array()) fail(where + ".edges", "expected an array of edges");
    std::vector<EdgeSpec> specs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::string at = where + ".edges[" + std::to_string(i) + "]";
        const json& e = edges[i];
        specs.push_back({get_string(field(e, at, "from"), at + ".from"),
                         get_string(field(e, at, "to"), at + ".to"),
                         get_rat(field(e, at, "weight"), at + ".weight")});
    }
    return ExpertGraph(std::move(labels), std::move(specs));
}

RankingDistribution parse_ranking_distribution(const json& obj) {
    LabelSet labels = parse_labels(obj, "ranking_distribution");
    const json& entries = field(obj, "ranking_distribution", "weights");
    if (!entries.is_array()) fail("weights", "expected an array of entries");
    std::map<std::vector<int>, Rat> weights;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string at = "weights[" + std::to_string(i) + "]";
        const json& e = entries[i];
        auto order = string_list(field(e, at, "ranking"), at + ".ranking");
        std::vector<int> key;
        for (const auto& name : order) key.push_back(labels.index(name));
        if (!weights.emplace(std::move(key), get_rat(field(e, at, "weight"), at + ".weight")).second)
            fail(at, "duplicate ranking");
    }
    return RankingDistribution(std::move(labels), std::move(weights));
}

CountTable parse_count_table(const json& obj) {
    LabelSet labels = parse_labels(obj, "count_table");
    auto covariates = string_list(field(obj, "count_table", "covariates"), "covariates");
    std::vector<std::string> treatments;
    if (obj.contains("treatments"))
        treatments = string_list(obj.at("treatments"), "treatments");
    const json& counts = field(obj, "count_table", "counts");
    if (!counts.is_array()) fail("counts", "expected an array");
    std::vector<std::vector<std::vector<Rat>>> data;
    auto parse_slice = [&](const json& slice, const std::string& at) {
        if (!slice.is_array()) fail(at, "expected an array of covariate rows");
        std::vector<std::vector<Rat>> rows;
        for (std::size_t x = 0; x < slice.size(); ++x)
            rows.push_back(rat_list(slice[x], at + "[" + std::to_string(x) + "]"));
        return rows;
    };
    if (treatments.empty()) {
        data.push_back(parse_slice(counts, "counts"));
    } else {
        for (std::size_t t = 0; t < counts.size(); ++t)
            data.push_back(parse_slice(counts[t], "counts[" + std::to_string(t) + "]"));
    }
    return CountTable(std::move(treatments), std::move(covariates), std::move(labels),
                      std::move(data));
}

PolytopeQuery parse_query(const json& obj) {
    ExpertGraph graph = parse_expert_graph(field(obj, "query", "graph"), "query.graph");
    std::optional<std::pair<std::string, std::string>> target;
    if (obj.contains("target_edge")) {
        auto pair = string_list(obj.at("target_edge"), "target_edge");
        if (pair.size() != 2) fail("target_edge", "expected exactly two labels");
        graph.labels().index(pair[0]);
        graph.labels().index(pair[1]);
        if (pair[0] == pair[1])
            throw Error(ErrorCode::identical_labels, "target_edge joins a label to itself");
        if (graph.has_edge(pair[0], pair[1]))
            throw Error(ErrorCode::invariant,
                        "target_edge is already specified in the graph");
        target = {pair[0], pair[1]};
    }
    return PolytopeQuery{std::move(graph), std::move(target)};
}

// ---- rendering ----------------------------------------------------------

json rat_to_json(const Rat& r) {
    const Int& num = boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) == 1 &&
        num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(num));
    return json(rat_to_string(r));
}

json render_graph_body(const ExpertGraph& g) {
    json obj = json::object();
    obj["labels"] = g.labels().names();
    json edges = json::array();
    for (const auto& e : g.edges()) {
        json entry = json::object();
        entry["from"] = g.labels().name(e.i);
        entry["to"] = g.labels().name(e.j);
        entry["weight"] = rat_to_json(e.weight);
        edges.push_back(std::move(entry));
    }
    obj["edges"] = std::move(edges);
    return obj;
}

struct Renderer {
    json operator()(const ProbabilityTable& t) const {
        json obj = header(DocumentKind::probability_table);
        obj["labels"] = t.labels().names();
        obj["states"] = t.states();
        json rows = json::array();
        for (int u = 0; u < t.state_count(); ++u) {
            json row = json::array();
            for (const Rat& v : t.row(u)) row.push_back(rat_to_json(v));
            rows.push_back(std::move(row));
        }
        obj["p"] = std::move(rows);
        json d = json::array();
        for (const Rat& v : t.dist()) d.push_back(rat_to_json(v));
        obj["d"] = std::move(d);
        return obj;
    }
    json operator()(const ExpertGraph& g) const {
        json obj = header(DocumentKind::expert_graph);
        json body = render_graph_body(g);
        obj["labels"] = std::move(body["labels"]);
        obj["edges"] = std::move(body["edges"]);
        return obj;
    }
    json operator()(const RankingDistribution& dist) const {
        json obj = header(DocumentKind::ranking_distribution);
        obj["labels"] = dist.labels().names();
        json entries = json::array();
        for (const auto& [ranking, w] : dist.weights()) {
            json entry = json::object();
            json names = json::array();
            for (int idx : ranking) names.push_back(dist.labels().name(idx));
            entry["ranking"] = std::move(names);
            entry["weight"] = rat_to_json(w);
            entries.push_back(std::move(entry));
        }
        obj["weights"] = std::move(entries);
        return obj;
    }
    json operator()(const CountTable& c) const {
        json obj = header(DocumentKind::count_table);
        obj["labels"] = c.labels().names();
        obj["covariates"] = c.covariates();
        if (c.has_treatments()) obj["treatments"] = c.treatments();
        auto slice_json = [&](const std::vector<std::vector<Rat>>& slice) {
            json rows = json::array();
            for (const auto& row : slice) {
                json cells = json::array();
                for (const Rat& v : row) cells.push_back(rat_to_json(v));
                rows.push_back(std::move(cells));
            }
            return rows;
        };
        if (c.has_treatments()) {
            json slices = json::array();
            for (const auto& slice : c.raw()) slices.push_back(slice_json(slice));
            obj["counts"] = std::move(slices);
        } else {
            obj["counts"] = slice_json(c.raw().front());
        }
        return obj;
    }
    json operator()(const PolytopeQuery& q) const {
        json obj = header(DocumentKind::query);
        obj["graph"] = render_graph_body(q.graph);
        if (q.target_edge)
            obj["target_edge"] = json::array({q.target_edge->first, q.target_edge->second});
        return obj;
    }

    static json header(DocumentKind kind) {
        json obj = json::object();
        obj["kind"] = std::string(to_string(kind));
        obj["version"] = "1";
        return obj;
    }
};

} // namespace

std::string_view to_string(DocumentKind kind) {
    switch (kind) {
    case DocumentKind::probability_table: return "probability_table";
    case DocumentKind::expert_graph: return "expert_graph";
    case DocumentKind::ranking_distribution: return "ranking_distribution";
    case DocumentKind::count_table: return "count_table";
    case DocumentKind::query: return "query";
    }
    return "unknown";
}

DocumentKind document_kind(const Document& doc) {
    return static_cast<DocumentKind>(doc.index());
}

Document parse_document(std::string_view text) {
    ExactBuilder builder;
    json::sax_parse(text, &builder);
    const json& root = builder.root;
    if (!root.is_object())
        throw Error(ErrorCode::syntax, "document: expected a top-level object");
    std::string kind = get_string(field(root, "document", "kind"), "kind");
    std::string version = get_string(field(root, "document", "version"), "version");
    if (version != "1")
        throw Error(ErrorCode::syntax, "unsupported document version '" + version + "'");
    if (kind == "probability_table") return parse_probability_table(root);
    if (kind == "expert_graph") return parse_expert_graph(root, "expert_graph");
    if (kind == "ranking_distribution") return parse_ranking_distribution(root);
    if (kind == "count_table") return parse_count_table(root);
    if (kind == "query") return parse_query(root);
    throw Error(ErrorCode::syntax, "unknown document kind '" + kind + "'");
}

std::string render_document(const Document& doc) {
    json obj = std::visit(Renderer{}, doc);
    return obj.dump(2) + "\n";
}

bool documents_equal(const Document& a, const Document& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs == std::get<T>(b);
        },
        a);
}

} // namespace eg
