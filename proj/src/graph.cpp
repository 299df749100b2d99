#include "eg/graph.hpp"

#include "eg/error.hpp"

#include <algorithm>

namespace eg {

namespace {

std::pair<int, int> canonical_pair(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Shared validation for both graph flavors; `open` demands (0,1), else [0,1].
std::map<std::pair<int, int>, Rat> build_weights(const LabelSet& labels,
                                                 const std::vector<EdgeSpec>& edges, bool open) {
    std::map<std::pair<int, int>, Rat> weights;
    for (const auto& e : edges) {
        int a = labels.index(e.from);
        int b = labels.index(e.to);
        if (a == b)
            throw Error(ErrorCode::identical_labels, "self edge on '" + e.from + "'");
        if (open && (e.weight <= 0 || e.weight >= 1))
            throw Error(ErrorCode::invariant, "edge " + e.from + " -> " + e.to + " weight " +
                                                  rat_to_string(e.weight) +
                                                  " outside the open interval (0,1)");
        if (!open && (e.weight < 0 || e.weight > 1))
            throw Error(ErrorCode::invariant, "edge " + e.from + " -> " + e.to + " weight " +
                                                  rat_to_string(e.weight) + " outside [0,1]");
        auto key = canonical_pair(a, b);
        Rat stored = a < b ? e.weight : Rat(1 - e.weight);
        auto [_, inserted] = weights.emplace(key, stored);
        if (!inserted)
            throw Error(ErrorCode::invariant,
                        "duplicate edge between '" + e.from + "' and '" + e.to + "'");
    }
    return weights;
}

Rat lookup_weight(const LabelSet& labels, const std::map<std::pair<int, int>, Rat>& weights,
                  const std::string& from, const std::string& to) {
    int a = labels.index(from);
    int b = labels.index(to);
    if (a == b)
        throw Error(ErrorCode::identical_labels, "no edge from '" + from + "' to itself");
    auto it = weights.find(canonical_pair(a, b));
    if (it == weights.end())
        throw Error(ErrorCode::missing_edge, "no edge between '" + from + "' and '" + to + "'");
    return a < b ? it->second : Rat(1 - it->second);
}

std::vector<Edge> list_edges(const std::map<std::pair<int, int>, Rat>& weights) {
    std::vector<Edge> out;
    out.reserve(weights.size());
    for (const auto& [key, w] : weights) out.push_back({key.first, key.second, w});
    return out;
}

} // namespace

ExpertGraph::ExpertGraph(LabelSet labels, std::vector<EdgeSpec> edges)
    : labels_(std::move(labels)), weights_(build_weights(labels_, edges, /*open=*/true)) {}

bool ExpertGraph::has_edge(const std::string& from, const std::string& to) const {
    auto a = labels_.find(from);
    auto b = labels_.find(to);
    if (!a || !b || *a == *b) return false;
    return weights_.contains(canonical_pair(*a, *b));
}

bool ExpertGraph::complete() const {
    int n = labels_.size();
    return static_cast<int>(weights_.size()) == n * (n - 1) / 2;
}

Rat ExpertGraph::weight(const std::string& from, const std::string& to) const {
    return lookup_weight(labels_, weights_, from, to);
}

Rat ExpertGraph::weight(int from, int to) const {
    return weight(labels_.name(from), labels_.name(to));
}

std::vector<Edge> ExpertGraph::edges() const { return list_edges(weights_); }

RankingGraph::RankingGraph(LabelSet labels, std::vector<std::string> order)
    : labels_(std::move(labels)), order_(std::move(order)), position_(labels_.size(), -1) {
    if (static_cast<int>(order_.size()) != labels_.size())
        throw Error(ErrorCode::invariant, "ranking must order every label exactly once");
    for (std::size_t rank = 0; rank < order_.size(); ++rank) {
        int idx = labels_.index(order_[rank]);
        if (position_[static_cast<std::size_t>(idx)] != -1)
            throw Error(ErrorCode::invariant, "ranking repeats label '" + order_[rank] + "'");
        position_[static_cast<std::size_t>(idx)] = static_cast<int>(rank);
    }
}

RankingGraph RankingGraph::of_order(std::vector<std::string> order) {
    LabelSet labels(order);
    return RankingGraph(std::move(labels), std::move(order));
}

int RankingGraph::position(const std::string& label) const {
    return position_[static_cast<std::size_t>(labels_.index(label))];
}

int RankingGraph::edge(const std::string& from, const std::string& to) const {
    int a = position(from);
    int b = position(to);
    if (a == b)
        throw Error(ErrorCode::identical_labels, "no edge from '" + from + "' to itself");
    return a < b ? 1 : 0;
}

LinearOrderingGraph::LinearOrderingGraph(LabelSet labels, std::vector<EdgeSpec> edges)
    : labels_(std::move(labels)), weights_(build_weights(labels_, edges, /*open=*/false)) {}

bool LinearOrderingGraph::has_edge(const std::string& from, const std::string& to) const {
    auto a = labels_.find(from);
    auto b = labels_.find(to);
    if (!a || !b || *a == *b) return false;
    return weights_.contains(canonical_pair(*a, *b));
}

Rat LinearOrderingGraph::weight(const std::string& from, const std::string& to) const {
    return lookup_weight(labels_, weights_, from, to);
}

std::vector<Edge> LinearOrderingGraph::edges() const { return list_edges(weights_); }

std::vector<std::pair<std::string, std::string>> LinearOrderingGraph::boundary_edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, w] : weights_)
        if (w == 0 || w == 1)
            out.emplace_back(labels_.name(key.first), labels_.name(key.second));
    return out;
}

ExpertGraph LinearOrderingGraph::to_expert_graph() const {
    auto boundary = boundary_edges();
    if (!boundary.empty())
        throw Error(ErrorCode::invariant, "graph touches the boundary on edge " +
                                              boundary.front().first + " -- " +
                                              boundary.front().second);
    std::vector<EdgeSpec> specs;
    for (const auto& [key, w] : weights_)
        specs.push_back({labels_.name(key.first), labels_.name(key.second), w});
    return ExpertGraph(labels_, std::move(specs));
}

namespace detail {

namespace {

struct CycleSearch {
    const std::vector<std::vector<char>>& adj;
    int n;
    int max_len;
    bool first_only;
    std::vector<int> path;
    std::vector<char> used;
    std::vector<std::vector<int>> found;

    // Extends a path rooted at path[0]; only vertices above the root may
    // appear, so each cycle is produced exactly once, smallest vertex first.
    // Closing edges are checked before deeper extension, which makes the
    // emission order lexicographic.
    bool grow() {
        int root = path.front();
        int v = path.back();
        for (int u = root + 1; u < n; ++u) {
            if (used[static_cast<std::size_t>(u)] || !adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
                continue;
            path.push_back(u);
            used[static_cast<std::size_t>(u)] = 1;
            if (path.size() >= 3 && adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(root)]) {
                found.push_back(path);
                if (first_only) return true;
            }
            if (static_cast<int>(path.size()) < max_len && grow()) return true;
            used[static_cast<std::size_t>(u)] = 0;
            path.pop_back();
        }
        return false;
    }
};

} // namespace

std::vector<std::vector<int>> directed_cycles(const std::vector<std::vector<char>>& adjacency,
                                              int max_len, bool first_only) {
    CycleSearch search{adjacency, static_cast<int>(adjacency.size()), max_len, first_only, {}, {}, {}};
    search.used.assign(adjacency.size(), 0);
    for (int start = 0; start < search.n; ++start) {
        search.path = {start};
        search.used.assign(adjacency.size(), 0);
        search.used[static_cast<std::size_t>(start)] = 1;
        if (search.grow() && first_only) break;
    }
    return search.found;
}

} // namespace detail

std::optional<Cycle> find_preference_cycle(const ExpertGraph& g) {
    if (!g.complete())
        throw Error(ErrorCode::incomplete_graph, "preference cycle search needs a complete graph");
    int n = g.labels().size();
    std::vector<std::vector<char>> majority(static_cast<std::size_t>(n),
                                            std::vector<char>(static_cast<std::size_t>(n), 0));
    Rat half(1, 2);
    for (const auto& e : g.edges()) {
        if (e.weight > half)
            majority[static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)] = 1;
        else if (e.weight < half)
            majority[static_cast<std::size_t>(e.j)][static_cast<std::size_t>(e.i)] = 1;
        // exact ties stay unoriented
    }
    auto cycles = detail::directed_cycles(majority, n, /*first_only=*/true);
    if (cycles.empty()) return std::nullopt;
    Cycle cycle;
    for (int idx : cycles.front()) cycle.vertices.push_back(g.labels().name(idx));
    return cycle;
}

CurlResult curl_check(const ExpertGraph& g, const Cycle& c) {
    if (c.vertices.size() < 3)
        throw Error(ErrorCode::invariant, "cycle needs at least three vertices");
    std::vector<char> seen(static_cast<std::size_t>(g.labels().size()), 0);
    for (const auto& v : c.vertices) {
        int idx = g.labels().index(v);
        if (seen[static_cast<std::size_t>(idx)])
            throw Error(ErrorCode::invariant, "cycle repeats vertex '" + v + "'");
        seen[static_cast<std::size_t>(idx)] = 1;
    }
    Rat sum = 0;
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
        const std::string& from = c.vertices[k];
        const std::string& to = c.vertices[(k + 1) % c.vertices.size()];
        sum += g.weight(from, to); // throws missing_edge when absent
    }
    Rat limit(static_cast<long>(c.vertices.size()) - 1);
    return {sum, sum <= limit};
}

} // namespace eg
