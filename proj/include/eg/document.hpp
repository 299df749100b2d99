#pragma once

#include "eg/decompose.hpp"
#include "eg/graph.hpp"
#include "eg/polytope.hpp"
#include "eg/prob_table.hpp"
#include "eg/scenario.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace eg {

enum class DocumentKind {
    probability_table,
    expert_graph,
    ranking_distribution,
    count_table,
    query,
};

std::string_view to_string(DocumentKind kind);

/// A parsed input file: one of the five payload kinds.
using Document =
    std::variant<ProbabilityTable, ExpertGraph, RankingDistribution, CountTable, PolytopeQuery>;

DocumentKind document_kind(const Document& doc);

/// Parses UTF-8 JSON with every number kept exact: integer tokens directly,
/// any other numeric token re-read as a decimal literal, and "p/q" strings
/// accepted wherever a number is. All structural invariants are validated
/// here with field-addressed messages.
Document parse_document(std::string_view text);

/// Canonical rendering; parse_document(render_document(d)) == d exactly.
std::string render_document(const Document& doc);

bool documents_equal(const Document& a, const Document& b);

} // namespace eg
