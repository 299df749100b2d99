#pragma once

#include "eg/graph.hpp"
#include "eg/prob_table.hpp"

#include <map>
#include <string>
#include <vector>

namespace eg {

/// Permutation enumeration is factorial; anything above this count is
/// rejected with a size-cap error rather than attempted.
inline constexpr int kMaxDecomposeLabels = 8;

/// Distribution over total orders of a label set. Keys are permutations in
/// canonical label indices; weights are nonnegative and sum to one exactly.
class RankingDistribution {
public:
    RankingDistribution(LabelSet labels, std::map<std::vector<int>, Rat> weights);

    const LabelSet& labels() const { return labels_; }
    const std::map<std::vector<int>, Rat>& weights() const { return weights_; }

    /// Weight of a ranking given by label names; zero when absent.
    Rat weight(const std::vector<std::string>& ranking) const;

    friend bool operator==(const RankingDistribution& a, const RankingDistribution& b) {
        return a.labels_ == b.labels_ && a.weights_ == b.weights_;
    }

private:
    LabelSet labels_;
    std::map<std::vector<int>, Rat> weights_;
};

/// Probability row over a (possibly shrunken) label list; the carrier for the
/// first-choice recursion. Entries are strictly positive and sum to one. A
/// single label is allowed, unlike LabelSet.
struct ReducedRow {
    std::vector<std::string> labels;
    std::vector<Rat> probs;

    friend bool operator==(const ReducedRow&, const ReducedRow&) = default;
};

/// One branch of the first-choice split: `first_choice` is promoted to the
/// front with probability `weight`, and `remainder` is the row over the other
/// labels renormalized by the remaining mass.
struct PrefixDecomposition {
    std::string first_choice;
    Rat weight;
    ReducedRow remainder;
};

/// Graph with edge weights f(i, j) = total weight of rankings placing i
/// before j. May land on the boundary (weight 0 or 1), hence the relaxed
/// return type.
LinearOrderingGraph synthesize_log(const RankingDistribution& dist,
                                   const std::vector<std::pair<std::string, std::string>>& edges);
LinearOrderingGraph synthesize_log(const RankingDistribution& dist);

/// First-choice split of one state's row. The single-label row is the
/// recursion's base case: one entry of weight one with an empty remainder.
std::vector<PrefixDecomposition> prefix_step(const ReducedRow& row);
std::vector<PrefixDecomposition> prefix_step(const ProbabilityTable& t, const std::string& state);

/// Full ranking distribution of one state via the sequential first-choice
/// recursion: w(r) = prod_i p(r_i) / (1 - sum of earlier picks).
RankingDistribution decompose_state(const ProbabilityTable& t, const std::string& state);

/// Mixture of the per-state decompositions by the state distribution d.
/// Every ranking carries positive weight whenever every d(u) > 0.
RankingDistribution decompose_graph(const ProbabilityTable& t);

} // namespace eg
