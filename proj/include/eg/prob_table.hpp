#pragma once

#include "eg/graph.hpp"
#include "eg/labels.hpp"
#include "eg/rational.hpp"

#include <string>
#include <vector>

namespace eg {

/// k hidden states x n labels of exact conditional probabilities, plus a
/// distribution over the states. Every row sums to one with strictly positive
/// entries; the state distribution sums to one and may contain zeros.
///
/// Immutable after construction.
class ProbabilityTable {
public:
    ProbabilityTable(LabelSet labels, std::vector<std::string> states,
                     std::vector<std::vector<Rat>> p, std::vector<Rat> d);

    static ProbabilityTable single_state(LabelSet labels, std::vector<Rat> row,
                                         std::string state = "u1");

    const LabelSet& labels() const { return labels_; }
    const std::vector<std::string>& states() const { return states_; }
    int state_count() const { return static_cast<int>(states_.size()); }
    int state_index(const std::string& state) const;

    const std::vector<Rat>& row(int state) const { return p_.at(static_cast<std::size_t>(state)); }
    const Rat& prob(int state, int label) const {
        return p_.at(static_cast<std::size_t>(state)).at(static_cast<std::size_t>(label));
    }
    const std::vector<Rat>& dist() const { return d_; }

    friend bool operator==(const ProbabilityTable& a, const ProbabilityTable& b) {
        return a.labels_ == b.labels_ && a.states_ == b.states_ && a.p_ == b.p_ && a.d_ == b.d_;
    }

private:
    LabelSet labels_;
    std::vector<std::string> states_;
    std::vector<std::vector<Rat>> p_;
    std::vector<Rat> d_;
};

/// Pr(Y = i | Y in {i, j}, u) = p_i / (p_i + p_j), exact.
Rat situational_opinion(const ProbabilityTable& t, const std::string& state,
                        const std::string& label_i, const std::string& label_j);
Rat situational_opinion(const ProbabilityTable& t, int state, int label_i, int label_j);

/// Graph of one state's pairwise opinions over the requested edge set.
ExpertGraph situational_graph(const ProbabilityTable& t, const std::string& state,
                              const std::vector<std::pair<std::string, std::string>>& edges);
ExpertGraph situational_graph(const ProbabilityTable& t, const std::string& state);

/// Aggregate opinions: the d-weighted average of situational opinions.
ExpertGraph expert_graph(const ProbabilityTable& t,
                         const std::vector<std::pair<std::string, std::string>>& edges);
ExpertGraph expert_graph(const ProbabilityTable& t);

/// Single-state table whose situational graph approximates the ranking graph:
/// with m the number of complete-graph edges and alpha_i = (epsilon/m)^i, the
/// i-th ranked label gets alpha_i normalized by their sum. The squared-L2 gap
/// over all edges is then below epsilon. Requires 0 < epsilon < m.
ProbabilityTable approximate_ranking(const RankingGraph& r, const Rat& epsilon);

} // namespace eg
