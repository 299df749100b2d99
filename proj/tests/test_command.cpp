#include "eg/command.hpp"
#include "eg/document.hpp"
#include "eg/worked_examples.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace eg;
using egtest::rat;

namespace {

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fixture_dir() {
    auto dir = std::filesystem::temp_directory_path() / "eg_cli_fixtures";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
    auto path = fixture_dir() / name;
    std::ofstream file(path, std::ios::binary);
    file << text;
    return path.string();
}

std::string write_doc(const std::string& name, const Document& doc) {
    return write_fixture(name, render_document(doc));
}

} // namespace

TEST_CASE("build renders the aggregate graph") {
    auto path = write_doc("rotating.json", Document(worked::rotating_state_table()));
    Run r = run({"--format", "json", "build", path});
    REQUIRE(r.exit_code == 0);
    Document out_doc = parse_document(r.out);
    const auto& g = std::get<ExpertGraph>(out_doc);
    CHECK(g.weight("Y1", "Y2") == Rat(6073, 10010));

    Run text = run({"build", path});
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("6073/10010") != std::string::npos);
    CHECK(text.out.find("0.6067") != std::string::npos);
}

TEST_CASE("build accepts an edge subset") {
    auto path = write_doc("rotating2.json", Document(worked::rotating_state_table()));
    Run r = run({"--format", "json", "build", path, "--edges", "Y1,Y2;Y2,Y3"});
    REQUIRE(r.exit_code == 0);
    Document out_doc = parse_document(r.out);
    const auto& g = std::get<ExpertGraph>(out_doc);
    CHECK(g.edge_count() == 2);
    CHECK(!g.has_edge("Y1", "Y3"));
}

TEST_CASE("decompose emits a distribution summing to one") {
    auto path = write_doc("first_choice.json", Document(worked::first_choice_table()));
    Run r = run({"--format", "json", "decompose", path});
    REQUIRE(r.exit_code == 0);
    Document out_doc = parse_document(r.out);
    const auto& dist = std::get<RankingDistribution>(out_doc);
    CHECK(dist.weights().size() == 6);
    CHECK(dist.weight({"Y1", "Y2", "Y3"}) == rat("3/10"));
    Rat total = 0;
    for (const auto& [_, w] : dist.weights()) total += w;
    CHECK(total == 1);
}

TEST_CASE("decompose then recompose pipes cleanly") {
    auto table = write_doc("pipe_table.json", Document(worked::rotating_state_table()));
    Run staged = run({"--format", "json", "decompose", table});
    REQUIRE(staged.exit_code == 0);
    auto dist_path = write_fixture("pipe_dist.json", staged.out);
    Run r = run({"--format", "json", "recompose", dist_path});
    REQUIRE(r.exit_code == 0);
    Document out_doc = parse_document(r.out);
    const auto& g = std::get<ExpertGraph>(out_doc);
    CHECK(g == expert_graph(worked::rotating_state_table()));
}

TEST_CASE("recompose flags boundary output") {
    LabelSet labels({"A", "B", "C"});
    RankingDistribution point(labels, {{{0, 1, 2}, Rat(1)}});
    auto path = write_doc("point.json", Document(point));
    Run text = run({"recompose", path});
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("[boundary]") != std::string::npos);
    Run js = run({"--format", "json", "recompose", path});
    CHECK(js.out.find("log_graph") != std::string::npos);
    CHECK(js.out.find("\"boundary\": true") != std::string::npos);
}

TEST_CASE("check splits exit codes by verdict") {
    LabelSet labels({"A", "B", "C"});
    auto hot = write_doc("cycle_75.json",
                         Document(ExpertGraph(labels, {{"A", "B", rat("3/4")},
                                                       {"B", "C", rat("3/4")},
                                                       {"C", "A", rat("3/4")}})));
    Run r = run({"check", hot});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("infeasible") != std::string::npos);
    CHECK(r.out.find("VIOLATED") != std::string::npos);

    auto mild = write_doc("cycle_61.json", Document(expert_graph(worked::rotating_state_table())));
    Run ok = run({"check", mild});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("strictly interior") != std::string::npos);

    auto boundary = write_doc("cycle_23.json",
                              Document(ExpertGraph(labels, {{"A", "B", rat("2/3")},
                                                            {"B", "C", rat("2/3")},
                                                            {"C", "A", rat("2/3")}})));
    Run edge = run({"check", boundary});
    CHECK(edge.exit_code == 0);
    CHECK(edge.out.find("on the boundary") != std::string::npos);
}

TEST_CASE("bound reports the exact interval") {
    LabelSet labels({"A", "B", "C"});
    PolytopeQuery q{ExpertGraph(labels, {{"A", "B", rat("2/3")}, {"B", "C", rat("2/3")}}),
                    std::pair<std::string, std::string>{"A", "C"}};
    auto path = write_doc("chain.json", Document(q));
    Run r = run({"bound", path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[1/3, 1]") != std::string::npos);

    LabelSet abcd({"A", "B", "C", "D"});
    PolytopeQuery bad{ExpertGraph(abcd, {{"A", "B", rat("3/4")},
                                         {"B", "C", rat("3/4")},
                                         {"C", "A", rat("3/4")}}),
                      std::pair<std::string, std::string>{"A", "D"}};
    Run infeasible = run({"bound", write_doc("bad_chain.json", Document(bad))});
    CHECK(infeasible.exit_code == 1);
    CHECK(infeasible.out.find("infeasible") != std::string::npos);
}

TEST_CASE("scenario panels exit 1 when the paradox bites") {
    auto path = write_doc("diagnosis.json", Document(worked::diagnosis_counts()));
    Run cyclic = run({"scenario", path, "--method", "reweight-uniform"});
    CHECK(cyclic.exit_code == 1);
    CHECK(cyclic.out.find("Cancer -> Virus -> Allergies -> Cancer") != std::string::npos);

    Run calm = run({"scenario", path, "--method", "reweight-observed"});
    CHECK(calm.exit_code == 0);
    CHECK(calm.out.find("cycle: none") != std::string::npos);

    auto confounded = write_doc("confounded.json", Document(worked::confounded_counts()));
    Run causal = run({"scenario", confounded, "--method", "backdoor"});
    CHECK(causal.exit_code == 1); // t1/t0 default to the two treatments

    Run sub = run({"scenario", path, "--method", "reweight-uniform", "--edges", "Cancer,Virus"});
    CHECK(sub.exit_code == 0); // a single pair cannot cycle
}

TEST_CASE("usage and input errors exit 2 with a machine-readable category") {
    Run missing = run({"build", "/no/such/file.json"});
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("\"category\":\"usage\"") != std::string::npos);

    auto junk = write_fixture("junk.json", "{ nope");
    Run syntax = run({"build", junk});
    CHECK(syntax.exit_code == 2);
    CHECK(syntax.err.find("\"category\":\"syntax\"") != std::string::npos);

    auto graph = write_doc("wrong_kind.json", Document(expert_graph(worked::first_choice_table())));
    Run wrong = run({"decompose", graph});
    CHECK(wrong.exit_code == 2);
    CHECK(wrong.err.find("\"category\":\"usage\"") != std::string::npos);

    Run nocmd = run({});
    CHECK(nocmd.exit_code == 2);

    Run badmethod = run({"scenario", graph, "--method", "alchemy"});
    CHECK(badmethod.exit_code == 2);

    Run help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("scenario") != std::string::npos);
}

TEST_CASE("the worked-example report is byte-identical across runs") {
    Run first = run({"paper"});
    Run second = run({"paper"});
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("5/9") != std::string::npos);
    CHECK(first.out.find("1/9") != std::string::npos);
    CHECK(first.out.find("6073/10010") != std::string::npos);
    CHECK(first.out.find("[1/3, 1]") != std::string::npos);
}

TEST_CASE("the bundled sample documents stay valid") {
    namespace fs = std::filesystem;
    fs::path dir(EG_DATA_DIR);
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        std::ifstream file(entry.path());
        std::stringstream buffer;
        buffer << file.rdbuf();
        CHECK_NOTHROW(parse_document(buffer.str()));
    }
    CHECK(seen >= 6);

    Run verdict = run({"check", (dir / "cycle_75.json").string()});
    CHECK(verdict.exit_code == 1);
    Run bounds = run({"bound", (dir / "chain_query.json").string()});
    CHECK(bounds.exit_code == 0);
    CHECK(bounds.out.find("[1/3, 1]") != std::string::npos);
}

TEST_CASE("the format flag may trail the subcommand") {
    auto path = write_doc("trailing.json", Document(worked::first_choice_table()));
    Run r = run({"build", path, "--format", "json"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"kind\": \"expert_graph\"") != std::string::npos);
}
