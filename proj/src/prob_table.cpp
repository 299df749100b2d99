#include "eg/prob_table.hpp"

#include "eg/error.hpp"

#include <unordered_map>

namespace eg {

ProbabilityTable::ProbabilityTable(LabelSet labels, std::vector<std::string> states,
                                   std::vector<std::vector<Rat>> p, std::vector<Rat> d)
    : labels_(std::move(labels)), states_(std::move(states)), p_(std::move(p)), d_(std::move(d)) {
    if (states_.empty())
        throw Error(ErrorCode::invariant, "probability table needs at least one state");
    std::unordered_map<std::string, int> seen;
    for (std::size_t u = 0; u < states_.size(); ++u) {
        if (states_[u].empty())
            throw Error(ErrorCode::invariant, "empty state name");
        if (!seen.emplace(states_[u], static_cast<int>(u)).second)
            throw Error(ErrorCode::invariant, "duplicate state '" + states_[u] + "'");
    }
    if (p_.size() != states_.size())
        throw Error(ErrorCode::invariant, "probability table has " + std::to_string(p_.size()) +
                                              " rows for " + std::to_string(states_.size()) +
                                              " states");
    for (std::size_t u = 0; u < p_.size(); ++u) {
        if (static_cast<int>(p_[u].size()) != labels_.size())
            throw Error(ErrorCode::invariant, "row for state '" + states_[u] + "' has " +
                                                  std::to_string(p_[u].size()) + " entries, expected " +
                                                  std::to_string(labels_.size()));
        Rat sum = 0;
        for (const Rat& v : p_[u]) {
            if (v <= 0)
                throw Error(ErrorCode::invariant, "row for state '" + states_[u] +
                                                      "' holds a nonpositive probability " +
                                                      rat_to_string(v));
            sum += v;
        }
        if (sum != 1)
            throw Error(ErrorCode::invariant, "row for state '" + states_[u] + "' sums to " +
                                                  rat_to_string(sum) + ", expected 1");
    }
    if (d_.size() != states_.size())
        throw Error(ErrorCode::invariant, "state distribution has " + std::to_string(d_.size()) +
                                              " entries for " + std::to_string(states_.size()) +
                                              " states");
    Rat dsum = 0;
    for (const Rat& v : d_) {
        if (v < 0)
            throw Error(ErrorCode::invariant,
                        "state distribution holds a negative weight " + rat_to_string(v));
        dsum += v;
    }
    if (dsum != 1)
        throw Error(ErrorCode::invariant,
                    "state distribution sums to " + rat_to_string(dsum) + ", expected 1");
}

ProbabilityTable ProbabilityTable::single_state(LabelSet labels, std::vector<Rat> row,
                                                std::string state) {
    std::vector<std::vector<Rat>> p{std::move(row)};
    return ProbabilityTable(std::move(labels), {std::move(state)}, std::move(p), {Rat(1)});
}

int ProbabilityTable::state_index(const std::string& state) const {
    for (std::size_t u = 0; u < states_.size(); ++u)
        if (states_[u] == state) return static_cast<int>(u);
    throw Error(ErrorCode::unknown_state, "unknown state '" + state + "'");
}

Rat situational_opinion(const ProbabilityTable& t, int state, int label_i, int label_j) {
    if (label_i == label_j)
        throw Error(ErrorCode::identical_labels,
                    "no opinion between '" + t.labels().name(label_i) + "' and itself");
    const Rat& pi = t.prob(state, label_i);
    const Rat& pj = t.prob(state, label_j);
    return pi / (pi + pj);
}

Rat situational_opinion(const ProbabilityTable& t, const std::string& state,
                        const std::string& label_i, const std::string& label_j) {
    return situational_opinion(t, t.state_index(state), t.labels().index(label_i),
                               t.labels().index(label_j));
}

namespace {

// shared edge-set walk for the two graph builders
template <typename WeightFn>
ExpertGraph build_graph(const LabelSet& labels,
                        const std::vector<std::pair<std::string, std::string>>& edges,
                        WeightFn&& weight_of) {
    std::vector<EdgeSpec> specs;
    specs.reserve(edges.size());
    for (const auto& [from, to] : edges)
        specs.push_back({from, to, weight_of(labels.index(from), labels.index(to))});
    return ExpertGraph(labels, std::move(specs));
}

} // namespace

ExpertGraph situational_graph(const ProbabilityTable& t, const std::string& state,
                              const std::vector<std::pair<std::string, std::string>>& edges) {
    int u = t.state_index(state);
    return build_graph(t.labels(), edges,
                       [&](int i, int j) { return situational_opinion(t, u, i, j); });
}

ExpertGraph situational_graph(const ProbabilityTable& t, const std::string& state) {
    return situational_graph(t, state, all_label_pairs(t.labels()));
}

ExpertGraph expert_graph(const ProbabilityTable& t,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    return build_graph(t.labels(), edges, [&](int i, int j) {
        Rat acc = 0;
        for (int u = 0; u < t.state_count(); ++u) {
            const Rat& du = t.dist()[static_cast<std::size_t>(u)];
            if (du.is_zero()) continue;
            acc += du * situational_opinion(t, u, i, j);
        }
        return acc;
    });
}

ExpertGraph expert_graph(const ProbabilityTable& t) {
    return expert_graph(t, all_label_pairs(t.labels()));
}

ProbabilityTable approximate_ranking(const RankingGraph& r, const Rat& epsilon) {
    int n = r.labels().size();
    long m = static_cast<long>(n) * (n - 1) / 2;
    if (epsilon <= 0)
        throw Error(ErrorCode::invalid_epsilon, "epsilon must be positive");
    if (epsilon >= m)
        throw Error(ErrorCode::invalid_epsilon,
                    "epsilon must stay below the edge count " + std::to_string(m));
    Rat step = epsilon / m; // the proof's 1/t
    std::vector<Rat> alpha(static_cast<std::size_t>(n));
    Rat power = 1;
    Rat z = 0;
    for (int i = 0; i < n; ++i) {
        power *= step;
        alpha[static_cast<std::size_t>(i)] = power;
        z += power;
    }
    // alpha follows ranking order; lay probabilities out in canonical order
    std::vector<Rat> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int label = r.labels().index(r.order()[static_cast<std::size_t>(i)]);
        row[static_cast<std::size_t>(label)] = alpha[static_cast<std::size_t>(i)] / z;
    }
    return ProbabilityTable::single_state(r.labels(), std::move(row));
}

} // namespace eg
