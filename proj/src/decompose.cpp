#include "eg/decompose.hpp"

#include "eg/error.hpp"

#include <algorithm>

namespace eg {

namespace {

void check_size_cap(int n) {
    if (n > kMaxDecomposeLabels)
        throw Error(ErrorCode::size_cap, "decomposition over " + std::to_string(n) +
                                             " labels exceeds the cap of " +
                                             std::to_string(kMaxDecomposeLabels) +
                                             " (factorial blow-up)");
}

ReducedRow validated_row(std::vector<std::string> labels, std::vector<Rat> probs) {
    if (labels.size() != probs.size() || labels.empty())
        throw Error(ErrorCode::invariant, "reduced row shape mismatch");
    Rat sum = 0;
    for (const Rat& p : probs) {
        if (p <= 0)
            throw Error(ErrorCode::invariant, "reduced row holds a nonpositive probability");
        sum += p;
    }
    if (sum != 1)
        throw Error(ErrorCode::invariant,
                    "reduced row sums to " + rat_to_string(sum) + ", expected 1");
    return {std::move(labels), std::move(probs)};
}

// Recursion of the first-choice split: peel a front label, renormalize the
// survivors by the remaining mass, recurse. Indices refer to the original
// label set.
void decompose_row(const std::vector<int>& remaining, const std::vector<Rat>& probs,
                   const Rat& carried, std::vector<int>& prefix,
                   std::map<std::vector<int>, Rat>& out) {
    if (remaining.size() == 1) {
        prefix.push_back(remaining.front());
        out[prefix] += carried;
        prefix.pop_back();
        return;
    }
    for (std::size_t pick = 0; pick < remaining.size(); ++pick) {
        const Rat& p = probs[pick];
        std::vector<int> next_labels;
        std::vector<Rat> next_probs;
        next_labels.reserve(remaining.size() - 1);
        next_probs.reserve(remaining.size() - 1);
        Rat rest = 1 - p;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (k == pick) continue;
            next_labels.push_back(remaining[k]);
            next_probs.push_back(probs[k] / rest);
        }
        prefix.push_back(remaining[pick]);
        decompose_row(next_labels, next_probs, Rat(carried * p), prefix, out);
        prefix.pop_back();
    }
}

} // namespace

RankingDistribution::RankingDistribution(LabelSet labels, std::map<std::vector<int>, Rat> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
    int n = labels_.size();
    Rat total = 0;
    for (const auto& [ranking, w] : weights_) {
        if (static_cast<int>(ranking.size()) != n)
            throw Error(ErrorCode::invariant, "ranking key of length " +
                                                  std::to_string(ranking.size()) + " over " +
                                                  std::to_string(n) + " labels");
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int idx : ranking) {
            if (idx < 0 || idx >= n || seen[static_cast<std::size_t>(idx)])
                throw Error(ErrorCode::invariant, "ranking key is not a permutation");
            seen[static_cast<std::size_t>(idx)] = 1;
        }
        if (w < 0)
            throw Error(ErrorCode::invariant, "negative ranking weight " + rat_to_string(w));
        total += w;
    }
    if (total != 1)
        throw Error(ErrorCode::invariant,
                    "ranking weights sum to " + rat_to_string(total) + ", expected 1");
}

Rat RankingDistribution::weight(const std::vector<std::string>& ranking) const {
    std::vector<int> key;
    key.reserve(ranking.size());
    for (const auto& name : ranking) key.push_back(labels_.index(name));
    auto it = weights_.find(key);
    return it == weights_.end() ? Rat(0) : it->second;
}

LinearOrderingGraph synthesize_log(const RankingDistribution& dist,
                                   const std::vector<std::pair<std::string, std::string>>& edges) {
    const LabelSet& labels = dist.labels();
    int n = labels.size();
    // accumulate "i before j" mass once per canonical pair
    std::map<std::pair<int, int>, Rat> mass;
    for (const auto& [from, to] : edges) {
        int a = labels.index(from);
        int b = labels.index(to);
        if (a == b)
            throw Error(ErrorCode::identical_labels, "self edge on '" + from + "'");
        if (!mass.emplace(std::minmax(a, b), Rat(0)).second)
            throw Error(ErrorCode::invariant,
                        "duplicate edge between '" + from + "' and '" + to + "'");
    }
    std::vector<int> position(static_cast<std::size_t>(n));
    for (const auto& [ranking, w] : dist.weights()) {
        if (w.is_zero()) continue;
        for (std::size_t k = 0; k < ranking.size(); ++k)
            position[static_cast<std::size_t>(ranking[k])] = static_cast<int>(k);
        for (auto& [pair, acc] : mass)
            if (position[static_cast<std::size_t>(pair.first)] <
                position[static_cast<std::size_t>(pair.second)])
                acc += w;
    }
    std::vector<EdgeSpec> specs;
    specs.reserve(mass.size());
    for (const auto& [pair, acc] : mass)
        specs.push_back({labels.name(pair.first), labels.name(pair.second), acc});
    return LinearOrderingGraph(labels, std::move(specs));
}

LinearOrderingGraph synthesize_log(const RankingDistribution& dist) {
    return synthesize_log(dist, all_label_pairs(dist.labels()));
}

std::vector<PrefixDecomposition> prefix_step(const ReducedRow& row) {
    ReducedRow checked = validated_row(row.labels, row.probs);
    std::vector<PrefixDecomposition> out;
    if (checked.labels.size() == 1) {
        out.push_back({checked.labels.front(), Rat(1), ReducedRow{}});
        return out;
    }
    for (std::size_t pick = 0; pick < checked.labels.size(); ++pick) {
        Rat rest = 1 - checked.probs[pick];
        ReducedRow remainder;
        for (std::size_t k = 0; k < checked.labels.size(); ++k) {
            if (k == pick) continue;
            remainder.labels.push_back(checked.labels[k]);
            remainder.probs.push_back(checked.probs[k] / rest);
        }
        out.push_back({checked.labels[pick], checked.probs[pick], std::move(remainder)});
    }
    return out;
}

std::vector<PrefixDecomposition> prefix_step(const ProbabilityTable& t, const std::string& state) {
    int u = t.state_index(state);
    return prefix_step(ReducedRow{t.labels().names(), t.row(u)});
}

RankingDistribution decompose_state(const ProbabilityTable& t, const std::string& state) {
    int n = t.labels().size();
    check_size_cap(n);
    int u = t.state_index(state);
    std::vector<int> remaining(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i;
    std::map<std::vector<int>, Rat> out;
    std::vector<int> prefix;
    decompose_row(remaining, t.row(u), Rat(1), prefix, out);
    return RankingDistribution(t.labels(), std::move(out));
}

RankingDistribution decompose_graph(const ProbabilityTable& t) {
    check_size_cap(t.labels().size());
    std::map<std::vector<int>, Rat> mix;
    for (int u = 0; u < t.state_count(); ++u) {
        const Rat& du = t.dist()[static_cast<std::size_t>(u)];
        if (du.is_zero()) continue;
        RankingDistribution part = decompose_state(t, t.states()[static_cast<std::size_t>(u)]);
        for (const auto& [ranking, w] : part.weights()) mix[ranking] += du * w;
    }
    return RankingDistribution(t.labels(), std::move(mix));
}

} // namespace eg
