#pragma once

#include "eg/labels.hpp"
#include "eg/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eg {

/// One directed edge weight supplied at construction time. Orientation is
/// free; storage canonicalizes to the lower-index endpoint.
struct EdgeSpec {
    std::string from;
    std::string to;
    Rat weight;
};

struct Edge {
    int i; // canonical tail (i < j)
    int j;
    Rat weight; // weight of i -> j; the reverse is 1 - weight
};

/// Weighted digraph of pairwise opinions. One rational per unordered pair is
/// stored for the canonical orientation; the opposite direction is derived as
/// its complement, so the pair always sums to one exactly. Weights live
/// strictly inside (0, 1). The edge set may be incomplete.
///
/// Immutable after construction; safe to share across threads.
class ExpertGraph {
public:
    ExpertGraph(LabelSet labels, std::vector<EdgeSpec> edges);

    const LabelSet& labels() const { return labels_; }

    bool has_edge(const std::string& from, const std::string& to) const;
    bool complete() const;
    int edge_count() const { return static_cast<int>(weights_.size()); }

    /// Directed weight of `from -> to`; the stored value or its complement.
    Rat weight(const std::string& from, const std::string& to) const;
    Rat weight(int from, int to) const;

    /// Canonical edges (i < j) in index order.
    std::vector<Edge> edges() const;

    friend bool operator==(const ExpertGraph& a, const ExpertGraph& b) {
        return a.labels_ == b.labels_ && a.weights_ == b.weights_;
    }

private:
    LabelSet labels_;
    std::map<std::pair<int, int>, Rat> weights_;
};

/// A total order of the labels; induces the 0/1 edge function "earlier beats
/// later" (a transitive tournament).
class RankingGraph {
public:
    RankingGraph(LabelSet labels, std::vector<std::string> order);

    /// Label set in ranking order (canonical index = rank position).
    static RankingGraph of_order(std::vector<std::string> order);

    const LabelSet& labels() const { return labels_; }
    const std::vector<std::string>& order() const { return order_; }
    int position(const std::string& label) const;

    /// 1 iff `from` precedes `to` in the ranking.
    int edge(const std::string& from, const std::string& to) const;

private:
    LabelSet labels_;
    std::vector<std::string> order_;
    std::vector<int> position_; // by label index
};

/// Directed cycle, listed once; the closing edge back to the first vertex is
/// implicit. At least three distinct vertices.
struct Cycle {
    std::vector<std::string> vertices;

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CurlResult {
    Rat sum;        // forward edge weights along the cycle
    bool satisfied; // sum <= len - 1
};

/// Relaxed variant of ExpertGraph whose weights live in the closed interval
/// [0, 1]. Produced when recomposing ranking distributions, which may place
/// an edge exactly on the boundary.
class LinearOrderingGraph {
public:
    LinearOrderingGraph(LabelSet labels, std::vector<EdgeSpec> edges);

    const LabelSet& labels() const { return labels_; }
    bool has_edge(const std::string& from, const std::string& to) const;
    Rat weight(const std::string& from, const std::string& to) const;
    std::vector<Edge> edges() const;

    /// Edges whose canonical weight is exactly 0 or 1.
    std::vector<std::pair<std::string, std::string>> boundary_edges() const;
    bool interior() const { return boundary_edges().empty(); }

    /// Conversion is only legal for interior graphs.
    ExpertGraph to_expert_graph() const;

private:
    LabelSet labels_;
    std::map<std::pair<int, int>, Rat> weights_;
};

/// Directed cycle of the strict-majority tournament (edges oriented toward
/// weight > 1/2; exact ties belong to neither side). Requires a complete
/// graph. Among all cycles the lexicographically smallest vertex sequence is
/// returned.
std::optional<Cycle> find_preference_cycle(const ExpertGraph& g);

/// Sum of the forward weights along `c`, compared against len - 1.
CurlResult curl_check(const ExpertGraph& g, const Cycle& c);

namespace detail {

/// Simple directed cycles of length 3..max_len, each rotated so its smallest
/// vertex comes first, emitted in lexicographic order of the index sequence.
/// With first_only set, stops after the first (lexicographically smallest).
std::vector<std::vector<int>> directed_cycles(const std::vector<std::vector<char>>& adjacency,
                                              int max_len, bool first_only);

} // namespace detail

} // namespace eg
