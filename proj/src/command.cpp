#include "eg/command.hpp"

#include "eg/document.hpp"
#include "eg/error.hpp"
#include "eg/worked_examples.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace eg {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::usage, "cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename T>
const T& expect_kind(const Document& doc, const char* command) {
    if (const T* payload = std::get_if<T>(&doc)) return *payload;
    throw Error(ErrorCode::usage, std::string(command) + " cannot work on a " +
                                      std::string(to_string(document_kind(doc))) + " document");
}

// "A,B;B,C" -> unordered pairs
std::vector<std::pair<std::string, std::string>> parse_edge_list(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::stringstream stream(text);
    std::string chunk;
    while (std::getline(stream, chunk, ';')) {
        auto comma = chunk.find(',');
        if (comma == std::string::npos || chunk.find(',', comma + 1) != std::string::npos)
            throw Error(ErrorCode::usage, "edge '" + chunk + "' must be 'from,to'");
        pairs.emplace_back(chunk.substr(0, comma), chunk.substr(comma + 1));
    }
    if (pairs.empty())
        throw Error(ErrorCode::usage, "empty edge list");
    return pairs;
}

std::string cycle_to_string(const Cycle& cycle) {
    std::string text;
    for (const auto& v : cycle.vertices) text += v + " -> ";
    text += cycle.vertices.front();
    return text;
}

json cycle_to_json(const Cycle& cycle) {
    json arr = json::array();
    for (const auto& v : cycle.vertices) arr.push_back(v);
    return arr;
}

// ---- build ---------------------------------------------------------------

int cmd_build(const std::string& path, const std::string& edges_opt, const std::string& format,
              std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& table = expect_kind<ProbabilityTable>(doc, "build");
    auto pairs =
        edges_opt.empty() ? all_label_pairs(table.labels()) : parse_edge_list(edges_opt);
    ExpertGraph graph = expert_graph(table, pairs);
    if (format == "json") {
        out << render_document(Document(graph));
    } else {
        out << "expert graph over " << graph.labels().size() << " labels, "
            << graph.edge_count() << (graph.complete() ? " edges (complete)\n" : " edges\n");
        for (const auto& e : graph.edges())
            out << "  " << graph.labels().name(e.i) << " -> " << graph.labels().name(e.j) << "  "
                << rat_display(e.weight) << "\n";
    }
    return 0;
}

// ---- decompose / recompose -------------------------------------------------

int cmd_decompose(const std::string& path, const std::string& format, std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& table = expect_kind<ProbabilityTable>(doc, "decompose");
    RankingDistribution dist = decompose_graph(table);
    if (format == "json") {
        out << render_document(Document(dist));
    } else {
        out << "ranking distribution over " << dist.weights().size() << " rankings\n";
        for (const auto& [ranking, w] : dist.weights()) {
            out << "  ";
            for (std::size_t k = 0; k < ranking.size(); ++k)
                out << (k ? " > " : "") << dist.labels().name(ranking[k]);
            out << ": " << rat_display(w) << "\n";
        }
    }
    return 0;
}

int cmd_recompose(const std::string& path, const std::string& edges_opt,
                  const std::string& format, std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& dist = expect_kind<RankingDistribution>(doc, "recompose");
    auto pairs = edges_opt.empty() ? all_label_pairs(dist.labels()) : parse_edge_list(edges_opt);
    LinearOrderingGraph graph = synthesize_log(dist, pairs);
    if (format == "json") {
        if (graph.interior()) {
            out << render_document(Document(graph.to_expert_graph()));
        } else {
            json obj = json::object();
            obj["kind"] = "log_graph";
            obj["labels"] = graph.labels().names();
            json edges = json::array();
            for (const auto& e : graph.edges()) {
                json entry = json::object();
                entry["from"] = graph.labels().name(e.i);
                entry["to"] = graph.labels().name(e.j);
                entry["weight"] = rat_to_string(e.weight);
                entry["boundary"] = e.weight == 0 || e.weight == 1;
                edges.push_back(std::move(entry));
            }
            obj["edges"] = std::move(edges);
            out << obj.dump(2) << "\n";
        }
    } else {
        out << "synthesized graph"
            << (graph.interior() ? " (interior)\n" : " (touches the boundary)\n");
        for (const auto& e : graph.edges())
            out << "  " << graph.labels().name(e.i) << " -> " << graph.labels().name(e.j) << "  "
                << rat_display(e.weight) << (e.weight == 0 || e.weight == 1 ? "  [boundary]" : "")
                << "\n";
    }
    return 0;
}

// ---- check / bound ---------------------------------------------------------

int cmd_check(const std::string& path, int max_cycle_len, const std::string& format,
              std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& graph = expect_kind<ExpertGraph>(doc, "check");
    PolytopeVerdict verdict = membership(graph);
    auto scan = curl_scan(graph, max_cycle_len);
    bool violated = false;
    for (const auto& entry : scan) violated |= !entry.satisfied;

    if (format == "json") {
        json obj = json::object();
        obj["kind"] = "check_report";
        obj["feasible"] = verdict.feasible;
        obj["strictly_interior"] = verdict.strictly_interior;
        json cycles = json::array();
        for (const auto& entry : scan) {
            json e = json::object();
            e["cycle"] = cycle_to_json(entry.cycle);
            e["sum"] = rat_to_string(entry.sum);
            e["satisfied"] = entry.satisfied;
            cycles.push_back(std::move(e));
        }
        obj["curl"] = std::move(cycles);
        out << obj.dump(2) << "\n";
    } else {
        out << "membership: "
            << (verdict.feasible
                    ? (verdict.strictly_interior ? "feasible, strictly interior"
                                                 : "feasible, on the boundary")
                    : "infeasible")
            << "\n";
        out << "curl scan up to length " << max_cycle_len << ": " << scan.size()
            << " directed cycles\n";
        for (const auto& entry : scan)
            out << "  " << cycle_to_string(entry.cycle) << "  sum " << rat_display(entry.sum)
                << "  limit " << entry.cycle.vertices.size() - 1
                << (entry.satisfied ? "" : "  VIOLATED") << "\n";
    }
    return verdict.feasible && !violated ? 0 : 1;
}

int cmd_bound(const std::string& path, const std::string& format, std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& query = expect_kind<PolytopeQuery>(doc, "bound");
    if (!query.target_edge)
        throw Error(ErrorCode::usage, "bound needs a query with a target_edge");
    PolytopeVerdict verdict = bound_missing_edge(query);
    if (format == "json") {
        json obj = json::object();
        obj["kind"] = "bound_report";
        obj["feasible"] = verdict.feasible;
        obj["strictly_interior"] = verdict.strictly_interior;
        if (verdict.bounds) {
            obj["lo"] = rat_to_string(verdict.bounds->lo);
            obj["hi"] = rat_to_string(verdict.bounds->hi);
        }
        out << obj.dump(2) << "\n";
    } else {
        if (verdict.feasible)
            out << "feasible range of " << query.target_edge->first << " -> "
                << query.target_edge->second << ": [" << rat_to_string(verdict.bounds->lo) << ", "
                << rat_to_string(verdict.bounds->hi) << "]  (~"
                << rat_to_decimal(verdict.bounds->lo) << " .. "
                << rat_to_decimal(verdict.bounds->hi) << ")\n";
        else
            out << "specified edges are infeasible; no bounds\n";
    }
    return verdict.feasible ? 0 : 1;
}

// ---- scenario --------------------------------------------------------------

PanelMethod make_method(const std::string& name, std::string t1, std::string t0,
                        const CountTable& table) {
    if (name == "reweight-uniform") return PanelMethod::reweight_uniform();
    if (name == "reweight-observed") return PanelMethod::reweight_observed();
    if (name != "backdoor" && name != "ipw")
        throw Error(ErrorCode::usage, "unknown method '" + name + "'");
    if (t1.empty() || t0.empty()) {
        if (table.treatments().size() != 2)
            throw Error(ErrorCode::usage,
                        "--t1/--t0 are required unless the table has exactly two treatments");
        t1 = table.treatments()[0];
        t0 = table.treatments()[1];
    }
    return name == "backdoor" ? PanelMethod::backdoor(std::move(t1), std::move(t0))
                              : PanelMethod::ipw(std::move(t1), std::move(t0));
}

void print_panel(const PanelReport& report, bool causal, const std::string& format,
                 std::ostream& out) {
    if (format == "json") {
        json obj = json::object();
        obj["kind"] = "panel_report";
        json entries = json::array();
        for (const auto& e : report.pairwise) {
            json entry = json::object();
            entry["pair"] = json::array({e.first, e.second});
            entry[causal ? "ate" : "prevalence"] = rat_to_string(e.value);
            entry["preferred"] = e.preferred ? json(*e.preferred) : json(nullptr);
            entry["margin"] = rat_to_string(e.margin);
            entries.push_back(std::move(entry));
        }
        obj["pairwise"] = std::move(entries);
        obj["cycle"] = report.cycle ? cycle_to_json(*report.cycle) : json(nullptr);
        out << obj.dump(2) << "\n";
        return;
    }
    for (const auto& e : report.pairwise) {
        out << "  {" << e.first << ", " << e.second << "}: "
            << (causal ? "ate of " + e.first : "prevalence of " + e.first) << " = "
            << rat_display(e.value) << ", "
            << (e.preferred ? "prefers " + *e.preferred : std::string("tied")) << "\n";
    }
    out << "cycle: " << (report.cycle ? cycle_to_string(*report.cycle) : "none") << "\n";
}

int cmd_scenario(const std::string& path, const std::string& method_name, const std::string& t1,
                 const std::string& t0, const std::string& edges_opt, const std::string& format,
                 std::ostream& out) {
    Document doc = parse_document(read_file(path));
    const auto& table = expect_kind<CountTable>(doc, "scenario");
    auto pairs = edges_opt.empty() ? all_label_pairs(table.labels()) : parse_edge_list(edges_opt);
    PanelMethod method = make_method(method_name, t1, t0, table);
    PanelReport report = run_panel(table, pairs, method);
    bool causal =
        method.kind == PanelMethod::Kind::backdoor || method.kind == PanelMethod::Kind::ipw;
    print_panel(report, causal, format, out);
    return report.cycle ? 1 : 0;
}

// ---- paper: re-derive every bundled worked-example number -------------------

void paper_panel(std::ostream& out, const CountTable& counts, const PanelMethod& method,
                 bool causal) {
    auto pairs = std::vector<std::pair<std::string, std::string>>{
        {"Cancer", "Virus"}, {"Virus", "Allergies"}, {"Allergies", "Cancer"}};
    print_panel(run_panel(counts, pairs, method), causal, "text", out);
}

int cmd_paper(std::ostream& out) {
    out << "== re-weighted prevalence on the diagnosis counts ==\n";
    CountTable diagnosis = worked::diagnosis_counts();
    out << "uniform covariate target:\n";
    paper_panel(out, diagnosis, PanelMethod::reweight_uniform(), false);
    out << "observed covariate weights:\n";
    paper_panel(out, diagnosis, PanelMethod::reweight_observed(), false);

    out << "\n== backdoor adjustment and IPW on the confounded counts ==\n";
    CountTable confounded = worked::confounded_counts();
    DomainRestriction cv{{"Cancer", "Virus"}};
    out << "within {Cancer, Virus}:\n";
    out << "  do(t1) Cancer: " << rat_display(backdoor_do(confounded, cv, "t1", "Cancer")) << "\n";
    out << "  do(t0) Cancer: " << rat_display(backdoor_do(confounded, cv, "t0", "Cancer")) << "\n";
    out << "  ate: " << rat_display(ate(confounded, cv, "t1", "t0", "Cancer")) << "\n";
    out << "  ipw ate: " << rat_display(ipw_ate(confounded, cv, "t1", "t0", "Cancer")) << "\n";
    out << "backdoor panel:\n";
    paper_panel(out, confounded, PanelMethod::backdoor("t1", "t0"), true);
    out << "ipw panel:\n";
    paper_panel(out, confounded, PanelMethod::ipw("t1", "t0"), true);

    out << "\n== aggregate graph of the rotating-state table ==\n";
    ExpertGraph rotating = expert_graph(worked::rotating_state_table());
    for (auto [from, to] : {std::pair<std::string, std::string>{"Y1", "Y2"}, {"Y2", "Y3"}, {"Y3", "Y1"}})
        out << "  " << from << " -> " << to << "  " << rat_display(rotating.weight(from, to))
            << "  [" << rat_to_decimal(rotating.weight(from, to), 2) << " at 2 decimals]\n";
    auto rotating_cycle = find_preference_cycle(rotating);
    out << "majority cycle: "
        << (rotating_cycle ? cycle_to_string(*rotating_cycle) : "none") << "\n";

    out << "\n== first-choice decomposition of the (.5, .3, .2) state ==\n";
    ProbabilityTable first = worked::first_choice_table();
    ExpertGraph first_graph = expert_graph(first);
    for (auto [from, to] : {std::pair<std::string, std::string>{"Y1", "Y2"}, {"Y2", "Y3"}, {"Y3", "Y1"}})
        out << "  " << from << " -> " << to << "  " << rat_display(first_graph.weight(from, to))
            << "\n";
    out << "prefix split:\n";
    for (const auto& part : prefix_step(first, "u1")) {
        out << "  first " << part.first_choice << " weight " << rat_display(part.weight)
            << ", remainder";
        for (std::size_t k = 0; k < part.remainder.labels.size(); ++k)
            out << " " << part.remainder.labels[k] << "="
                << rat_to_string(part.remainder.probs[k]);
        out << "\n";
    }
    RankingDistribution first_dist = decompose_state(first, "u1");
    out << "ranking weights:\n";
    Rat total = 0;
    for (const auto& [ranking, w] : first_dist.weights()) {
        out << "  ";
        for (std::size_t k = 0; k < ranking.size(); ++k)
            out << (k ? " > " : "") << first_dist.labels().name(ranking[k]);
        out << ": " << rat_display(w) << "\n";
        total += w;
    }
    out << "weights sum to " << rat_to_string(total) << "\n";
    LinearOrderingGraph recomposed = synthesize_log(first_dist);
    out << "recomposition matches: "
        << (recomposed.interior() && recomposed.to_expert_graph() == first_graph ? "yes" : "no")
        << "\n";

    out << "\n== uniform cyclic ranking mixture ==\n";
    LinearOrderingGraph mixture = synthesize_log(worked::cyclic_uniform_distribution());
    for (auto [from, to] : {std::pair<std::string, std::string>{"Y1", "Y2"}, {"Y2", "Y3"}, {"Y3", "Y1"}})
        out << "  " << from << " -> " << to << "  " << rat_display(mixture.weight(from, to))
            << "\n";

    out << "\n== polytope limits on the 3-cycle ==\n";
    auto cycle_graph = [](const Rat& w) {
        LabelSet labels({"A", "B", "C"});
        return ExpertGraph(labels, {{"A", "B", w}, {"B", "C", w}, {"C", "A", w}});
    };
    PolytopeVerdict boundary = membership(cycle_graph(Rat(2, 3)));
    out << "all edges 2/3: "
        << (boundary.feasible
                ? (boundary.strictly_interior ? "feasible, strictly interior"
                                              : "feasible, on the boundary")
              : "infeasible")
        << "\n";
    PolytopeVerdict overfull = membership(cycle_graph(Rat(3, 4)));
    out << "all edges 3/4: " << (overfull.feasible ? "feasible" : "infeasible") << "\n";

    LabelSet abc({"A", "B", "C"});
    PolytopeQuery query{ExpertGraph(abc, {{"A", "B", Rat(2, 3)}, {"B", "C", Rat(2, 3)}}),
                        std::pair<std::string, std::string>{"A", "C"}};
    PolytopeVerdict bounds = bound_missing_edge(query);
    out << "given A -> B = 2/3 and B -> C = 2/3, A -> C lies in ["
        << rat_to_string(bounds.bounds->lo) << ", " << rat_to_string(bounds.bounds->hi) << "]\n";

    out << "\n== dependence pattern of the scaled counts ==\n";
    auto describe = [&](const CountTable& table) {
        std::string text;
        for (const auto& condition : faithfulness_check(table)) {
            if (!text.empty()) text += ", ";
            text += condition.name + (condition.dependent ? ": dependent" : ": independent");
        }
        return text;
    };
    out << "all coefficients 1: " << describe(worked::confounded_counts()) << "\n";
    out << "coefficients (1, 1, 1, 11/10, 6/5, 13/10): "
        << describe(greek_table(1, 1, 1, Rat(11, 10), Rat(6, 5), Rat(13, 10))) << "\n";
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"expert graphs, ranking decompositions and re-weighting paradoxes"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string path;
    std::string edges;
    int max_cycle_len = 4;
    std::string method;
    std::string t1, t0;

    CLI::App* build = app.add_subcommand("build", "probability table -> expert graph");
    build->add_option("file", path, "probability_table document")->required();
    build->add_option("--edges", edges, "edge list 'A,B;B,C' (default: complete)");

    CLI::App* decompose = app.add_subcommand("decompose", "probability table -> ranking distribution");
    decompose->add_option("file", path, "probability_table document")->required();

    CLI::App* recompose = app.add_subcommand("recompose", "ranking distribution -> graph");
    recompose->add_option("file", path, "ranking_distribution document")->required();
    recompose->add_option("--edges", edges, "edge list (default: complete)");

    CLI::App* check = app.add_subcommand("check", "membership and curl scan of an expert graph");
    check->add_option("file", path, "expert_graph document")->required();
    check->add_option("--max-cycle-len", max_cycle_len, "curl scan cycle cap")
        ->check(CLI::Range(3, 8));

    CLI::App* bound = app.add_subcommand("bound", "feasible interval of a missing edge");
    bound->add_option("file", path, "query document with target_edge")->required();

    CLI::App* scenario = app.add_subcommand("scenario", "restricted expert panel on count data");
    scenario->add_option("file", path, "count_table document")->required();
    scenario->add_option("--method", method, "reweight-uniform | reweight-observed | backdoor | ipw")
        ->required();
    scenario->add_option("--t1", t1, "treatment switched to (causal methods)");
    scenario->add_option("--t0", t0, "treatment switched from (causal methods)");
    scenario->add_option("--edges", edges, "pair list (default: every pair)");

    CLI::App* paper = app.add_subcommand("paper", "re-derive every bundled worked-example number");
    (void)paper;
    // let global flags like --format appear after the subcommand too
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    // CLI11's vector overload consumes the arguments back to front
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        json obj = json::object();
        obj["category"] = "usage";
        obj["message"] = e.what();
        err << obj.dump() << "\n";
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(path, edges, format, out);
        if (decompose->parsed()) return cmd_decompose(path, format, out);
        if (recompose->parsed()) return cmd_recompose(path, edges, format, out);
        if (check->parsed()) return cmd_check(path, max_cycle_len, format, out);
        if (bound->parsed()) return cmd_bound(path, format, out);
        if (scenario->parsed()) return cmd_scenario(path, method, t1, t0, edges, format, out);
        return cmd_paper(out);
    } catch (const Error& e) {
        json obj = json::object();
        obj["category"] = std::string(to_string(e.code()));
        obj["message"] = e.what();
        err << obj.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json obj = json::object();
        obj["category"] = "internal";
        obj["message"] = e.what();
        err << obj.dump() << "\n";
        return 2;
    }
}

} // namespace eg
