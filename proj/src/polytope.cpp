#include "eg/polytope.hpp"

#include "eg/error.hpp"
#include "eg/simplex.hpp"

#include <algorithm>
#include <numeric>

namespace eg {

namespace {

// permutations in lexicographic order; the LP's column order
std::vector<std::vector<int>> all_rankings(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

struct RankingSystem {
    std::vector<std::vector<int>> rankings;
    std::vector<std::vector<char>> before; // [edge][ranking]: tail precedes head
    std::vector<Rat> rhs;                  // specified edge weights
};

// Constraint rows of the specified edges over the ranking columns.
RankingSystem build_system(const ExpertGraph& g) {
    int n = g.labels().size();
    if (n > kMaxPolytopeLabels)
        throw Error(ErrorCode::size_cap, "polytope queries over " + std::to_string(n) +
                                             " labels exceed the cap of " +
                                             std::to_string(kMaxPolytopeLabels));
    RankingSystem sys;
    sys.rankings = all_rankings(n);
    auto edges = g.edges();
    std::vector<int> position(static_cast<std::size_t>(n));
    sys.before.assign(edges.size(), std::vector<char>(sys.rankings.size(), 0));
    for (std::size_t r = 0; r < sys.rankings.size(); ++r) {
        for (std::size_t k = 0; k < sys.rankings[r].size(); ++k)
            position[static_cast<std::size_t>(sys.rankings[r][k])] = static_cast<int>(k);
        for (std::size_t e = 0; e < edges.size(); ++e)
            sys.before[e][r] = position[static_cast<std::size_t>(edges[e].i)] <
                               position[static_cast<std::size_t>(edges[e].j)];
    }
    for (const auto& e : edges) sys.rhs.push_back(e.weight);
    return sys;
}

// max t subject to: ranking weights v + t reproduce the edges and sum to 1.
// Feasibility of this program coincides with plain membership (t = 0), and
// the optimum is the best possible minimum ranking weight.
lp::Solution solve_interior(const RankingSystem& sys) {
    const std::size_t R = sys.rankings.size();
    const std::size_t m = sys.before.size();
    lp::Problem prob;
    prob.a.assign(m + 1, std::vector<Rat>(R + 1));
    prob.b.resize(m + 1);
    prob.c.assign(R + 1, Rat(0));
    for (std::size_t e = 0; e < m; ++e) {
        long count = 0;
        for (std::size_t r = 0; r < R; ++r) {
            if (sys.before[e][r]) {
                prob.a[e][r] = 1;
                ++count;
            }
        }
        prob.a[e][R] = count; // the t column aggregates every ranking
        prob.b[e] = sys.rhs[e];
    }
    for (std::size_t r = 0; r < R; ++r) prob.a[m][r] = 1;
    prob.a[m][R] = static_cast<long>(R);
    prob.b[m] = 1;
    prob.c[R] = -1; // maximize t
    return lp::solve(prob);
}

} // namespace

PolytopeVerdict membership(const ExpertGraph& g) {
    RankingSystem sys = build_system(g);
    lp::Solution sol = solve_interior(sys);
    PolytopeVerdict verdict;
    if (sol.status != lp::Status::optimal) return verdict;
    verdict.feasible = true;
    verdict.strictly_interior = sol.objective < 0; // objective is -t*
    return verdict;
}

PolytopeVerdict bound_missing_edge(const PolytopeQuery& q) {
    if (!q.target_edge)
        throw Error(ErrorCode::invariant, "bound query without a target edge");
    const auto& [from, to] = *q.target_edge;
    const LabelSet& labels = q.graph.labels();
    int a = labels.index(from);
    int b = labels.index(to);
    if (a == b)
        throw Error(ErrorCode::identical_labels, "target edge joins '" + from + "' to itself");
    if (q.graph.has_edge(from, to))
        throw Error(ErrorCode::invariant,
                    "target edge '" + from + "' -- '" + to + "' is already specified");

    RankingSystem sys = build_system(q.graph);
    const std::size_t R = sys.rankings.size();
    const std::size_t m = sys.before.size();

    lp::Problem prob;
    prob.a.assign(m + 1, std::vector<Rat>(R));
    prob.b.resize(m + 1);
    prob.c.assign(R, Rat(0));
    for (std::size_t e = 0; e < m; ++e) {
        for (std::size_t r = 0; r < R; ++r)
            if (sys.before[e][r]) prob.a[e][r] = 1;
        prob.b[e] = sys.rhs[e];
    }
    for (std::size_t r = 0; r < R; ++r) prob.a[m][r] = 1;
    prob.b[m] = 1;

    std::vector<int> position(static_cast<std::size_t>(labels.size()));
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t k = 0; k < sys.rankings[r].size(); ++k)
            position[static_cast<std::size_t>(sys.rankings[r][k])] = static_cast<int>(k);
        if (position[static_cast<std::size_t>(a)] < position[static_cast<std::size_t>(b)])
            prob.c[r] = 1;
    }

    PolytopeVerdict verdict;
    lp::Solution lo = lp::solve(prob);
    if (lo.status != lp::Status::optimal) return verdict;
    for (auto& coef : prob.c) coef = -coef;
    lp::Solution hi = lp::solve(prob);

    verdict.feasible = true;
    verdict.strictly_interior = solve_interior(sys).objective < 0;
    verdict.bounds = Interval{lo.objective, Rat(-hi.objective)};
    return verdict;
}

std::vector<CurlScanEntry> curl_scan(const ExpertGraph& g, int max_len) {
    if (max_len < 3)
        throw Error(ErrorCode::invariant, "curl scan needs max_len >= 3");
    int n = g.labels().size();
    std::vector<std::vector<char>> present(static_cast<std::size_t>(n),
                                           std::vector<char>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) {
        present[static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)] = 1;
        present[static_cast<std::size_t>(e.j)][static_cast<std::size_t>(e.i)] = 1;
    }
    auto cycles = detail::directed_cycles(present, std::min(max_len, n), /*first_only=*/false);
    std::vector<CurlScanEntry> out;
    out.reserve(cycles.size());
    for (const auto& path : cycles) {
        Cycle cycle;
        for (int idx : path) cycle.vertices.push_back(g.labels().name(idx));
        CurlResult res = curl_check(g, cycle);
        out.push_back({std::move(cycle), std::move(res.sum), res.satisfied});
    }
    std::stable_sort(out.begin(), out.end(), [](const CurlScanEntry& x, const CurlScanEntry& y) {
        // violation margin = sum - (len - 1), most violated first
        Rat mx = x.sum - (static_cast<long>(x.cycle.vertices.size()) - 1);
        Rat my = y.sum - (static_cast<long>(y.cycle.vertices.size()) - 1);
        return mx > my;
    });
    return out;
}

} // namespace eg
