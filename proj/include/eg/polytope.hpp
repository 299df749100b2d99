#pragma once

#include "eg/graph.hpp"
#include "eg/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace eg {

inline constexpr int kMaxPolytopeLabels = 8;

/// Membership / bounds query: a graph whose specified edges act as equality
/// constraints, and optionally one absent edge whose feasible weight range is
/// wanted.
struct PolytopeQuery {
    ExpertGraph graph;
    std::optional<std::pair<std::string, std::string>> target_edge;

    friend bool operator==(const PolytopeQuery&, const PolytopeQuery&) = default;
};

struct Interval {
    Rat lo;
    Rat hi;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct PolytopeVerdict {
    bool feasible = false;
    bool strictly_interior = false;
    /// Feasible range of the target edge; present iff one was queried and the
    /// constraints admit any distribution at all.
    std::optional<Interval> bounds;
};

/// Exact feasibility over distributions on all n! rankings: is there a point
/// of the ranking simplex reproducing every specified edge weight? Strict
/// interiority maximizes the minimum ranking weight and checks the optimum is
/// positive.
PolytopeVerdict membership(const ExpertGraph& g);

/// Exact [min, max] of the target edge weight over every distribution
/// consistent with the specified edges. The target pair is read in the given
/// (from, to) orientation.
PolytopeVerdict bound_missing_edge(const PolytopeQuery& q);

struct CurlScanEntry {
    Cycle cycle;
    Rat sum;
    bool satisfied;
};

/// Every directed cycle over present edges up to max_len, with its curl sum,
/// most violated first.
std::vector<CurlScanEntry> curl_scan(const ExpertGraph& g, int max_len);

} // namespace eg
