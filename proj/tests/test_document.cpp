#include "eg/document.hpp"
#include "eg/error.hpp"
#include "eg/worked_examples.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace eg;
using egtest::rat;

TEST_CASE("a probability table file parses with exact numbers") {
    // raw JSON decimals must land exactly, not as doubles
    const char* text = R"({
      "kind": "probability_table", "version": "1",
      "labels": ["Y1", "Y2", "Y3"],
      "states": ["u1", "u2", "u3"],
      "p": [[0.90, 0.09, 0.01], [0.01, 0.90, 0.09], ["0.09", "0.01", "0.90"]],
      "d": ["1/3", "1/3", "1/3"]
    })";
    Document doc = parse_document(text);
    REQUIRE(document_kind(doc) == DocumentKind::probability_table);
    const auto& table = std::get<ProbabilityTable>(doc);
    CHECK(table.prob(0, 0) == rat("9/10"));
    CHECK(table.prob(1, 1) == rat("9/10"));
    CHECK(table.prob(2, 2) == rat("9/10"));
    CHECK(table.dist()[0] == rat("1/3"));
    CHECK(table == worked::rotating_state_table());
}

TEST_CASE("mixed fraction and decimal spellings coexist") {
    const char* text = R"({
      "kind": "expert_graph", "version": "1",
      "labels": ["A", "B", "C"],
      "edges": [
        {"from": "A", "to": "B", "weight": "2/3"},
        {"from": "B", "to": "C", "weight": 0.5}
      ]
    })";
    Document doc = parse_document(text);
    const auto& g = std::get<ExpertGraph>(doc);
    CHECK(g.weight("A", "B") == rat("2/3"));
    CHECK(g.weight("B", "C") == rat("1/2"));
}

TEST_CASE("tenths survive the trip through a JSON number token") {
    Document doc = parse_document(R"({
      "kind": "expert_graph", "version": "1",
      "labels": ["A", "B"],
      "edges": [{"from": "A", "to": "B", "weight": 0.1}]
    })");
    CHECK(std::get<ExpertGraph>(doc).weight("A", "B") == Rat(1, 10));
}

TEST_CASE("invariant violations point at the offending field") {
    const char* text = R"({
      "kind": "probability_table", "version": "1",
      "labels": ["A", "B"],
      "states": ["u1"],
      "p": [[0.5, 0.49]],
      "d": [1]
    })";
    try {
        parse_document(text);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invariant);
        CHECK(std::string(e.what()).find("u1") != std::string::npos);
        CHECK(std::string(e.what()).find("99/100") != std::string::npos);
    }
}

TEST_CASE("structural problems are syntax errors") {
    CHECK_THROWS_AS(parse_document("not json"), Error);
    CHECK_THROWS_AS(parse_document("[]"), Error);
    CHECK_THROWS_AS(parse_document(R"({"kind": "mystery", "version": "1"})"), Error);
    CHECK_THROWS_AS(parse_document(R"({"kind": "expert_graph", "version": "7"})"), Error);
    CHECK_THROWS_AS(parse_document(R"({"version": "1"})"), Error);
    try {
        parse_document("{\"kind\": ");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::syntax);
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("count tables with and without treatments") {
    const char* untreated = R"({
      "kind": "count_table", "version": "1",
      "labels": ["Cancer", "Virus", "Allergies"],
      "covariates": ["x1", "x2", "x3"],
      "counts": [[2, 1, 0], [0, 2, 1], [1, 0, 2]]
    })";
    CHECK(std::get<CountTable>(parse_document(untreated)) == worked::diagnosis_counts());

    const char* treated = R"({
      "kind": "count_table", "version": "1",
      "labels": ["Cancer", "Virus", "Allergies"],
      "covariates": ["x1", "x2", "x3"],
      "treatments": ["t1", "t0"],
      "counts": [
        [[2, 1, 0], [0, 2, 1], [1, 0, 2]],
        [[0, 1, 2], [2, 0, 1], [1, 2, 0]]
      ]
    })";
    CHECK(std::get<CountTable>(parse_document(treated)) == worked::confounded_counts());
}

TEST_CASE("query documents validate the target edge") {
    const char* good = R"({
      "kind": "query", "version": "1",
      "graph": {
        "labels": ["A", "B", "C"],
        "edges": [{"from": "A", "to": "B", "weight": "2/3"}]
      },
      "target_edge": ["A", "C"]
    })";
    Document doc = parse_document(good);
    const auto& q = std::get<PolytopeQuery>(doc);
    CHECK(q.target_edge == std::pair<std::string, std::string>{"A", "C"});

    const char* already = R"({
      "kind": "query", "version": "1",
      "graph": {
        "labels": ["A", "B"],
        "edges": [{"from": "A", "to": "B", "weight": "2/3"}]
      },
      "target_edge": ["B", "A"]
    })";
    CHECK_THROWS_AS(parse_document(already), Error);
}

TEST_CASE("render and parse are inverse for every kind") {
    std::mt19937_64 rng(1234);
    std::vector<Document> docs;
    docs.emplace_back(worked::rotating_state_table());
    docs.emplace_back(egtest::random_table(rng, 4, 3));
    docs.emplace_back(expert_graph(worked::first_choice_table()));
    docs.emplace_back(decompose_graph(egtest::random_table(rng, 3, 2)));
    docs.emplace_back(worked::diagnosis_counts());
    docs.emplace_back(worked::confounded_counts());
    docs.emplace_back(egtest::random_count_table(rng, 3, 2, 4, false));
    LabelSet abc({"A", "B", "C"});
    docs.emplace_back(PolytopeQuery{
        ExpertGraph(abc, {{"A", "B", rat("2/3")}, {"B", "C", rat("2/3")}}),
        std::pair<std::string, std::string>{"A", "C"}});
    docs.emplace_back(PolytopeQuery{ExpertGraph(abc, {{"A", "B", rat("1/7")}}), std::nullopt});

    for (const Document& doc : docs) {
        std::string text = render_document(doc);
        Document back = parse_document(text);
        CHECK(documents_equal(doc, back));
        // and rendering is a fixed point
        CHECK(render_document(back) == text);
    }
}
