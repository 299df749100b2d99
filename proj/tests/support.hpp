#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here stays deliberately separate from the library's own algorithms: the
// oracles re-derive expected values through different routes.

#include "eg/decompose.hpp"
#include "eg/prob_table.hpp"
#include "eg/scenario.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace egtest {

using eg::CountTable;
using eg::LabelSet;
using eg::ProbabilityTable;
using eg::Rat;

inline Rat rat(const char* text) { return eg::rat_from_string(text); }

inline std::vector<std::string> numbered(const char* prefix, int count) {
    std::vector<std::string> names;
    for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

// strictly positive rational row summing to one
inline std::vector<Rat> random_row(std::mt19937_64& rng, int n, int max_numer = 20) {
    std::uniform_int_distribution<int> numer(1, max_numer);
    std::vector<Rat> row(static_cast<std::size_t>(n));
    Rat sum = 0;
    for (auto& v : row) {
        v = numer(rng);
        sum += v;
    }
    for (auto& v : row) v /= sum;
    return row;
}

inline ProbabilityTable random_table(std::mt19937_64& rng, int n, int k) {
    std::vector<std::vector<Rat>> p;
    for (int u = 0; u < k; ++u) p.push_back(random_row(rng, n));
    std::vector<Rat> d = random_row(rng, k); // normalizing makes k = 1 the point mass
    return ProbabilityTable(LabelSet(numbered("L", n)), numbered("u", k), std::move(p),
                            std::move(d));
}

inline std::vector<std::string> random_order(std::mt19937_64& rng, int n) {
    std::vector<std::string> order = numbered("L", n);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

inline CountTable random_count_table(std::mt19937_64& rng, int nt, int nx, int ny,
                                     bool full_support) {
    std::uniform_int_distribution<int> cell(full_support ? 1 : 0, 9);
    std::vector<std::vector<std::vector<Rat>>> counts;
    for (int t = 0; t < std::max(1, nt); ++t) {
        std::vector<std::vector<Rat>> slice;
        for (int x = 0; x < nx; ++x) {
            std::vector<Rat> row;
            for (int y = 0; y < ny; ++y) row.push_back(Rat(cell(rng), 1 + cell(rng)));
            slice.push_back(std::move(row));
        }
        counts.push_back(std::move(slice));
    }
    return CountTable(nt == 0 ? std::vector<std::string>{} : numbered("t", nt),
                      numbered("x", nx), LabelSet(numbered("y", ny)), std::move(counts));
}

// ---------------------------------------------------------------------------
// Oracle 1: ranking weights through the printed sequential product formula,
// evaluated term by term over every permutation (no recursion, no reduced
// tables).
inline std::map<std::vector<int>, Rat> direct_state_weights(const std::vector<Rat>& probs) {
    int n = static_cast<int>(probs.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::vector<int>, Rat> out;
    do {
        Rat w = 1;
        Rat consumed = 0;
        for (int idx : perm) {
            w *= probs[static_cast<std::size_t>(idx)] / (1 - consumed);
            consumed += probs[static_cast<std::size_t>(idx)];
        }
        out[perm] = w;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// The product-of-complements variant as literally printed; its weights do not
// form a distribution, which a dedicated test pins down.
inline std::map<std::vector<int>, Rat> literal_printed_weights(const std::vector<Rat>& probs) {
    int n = static_cast<int>(probs.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::vector<int>, Rat> out;
    do {
        Rat w = 1;
        Rat complements = 1;
        for (int idx : perm) {
            w *= probs[static_cast<std::size_t>(idx)] / complements;
            complements *= 1 - probs[static_cast<std::size_t>(idx)];
        }
        out[perm] = w;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Oracle 2: exact linear-program bounds by brute-force vertex enumeration.
// Every optimum of a bounded feasible LP over {x >= 0, Ax = b} sits on a
// basic solution, so trying all column subsets of size rank(A) and keeping
// the nonnegative ones finds the exact min and max of c.x. Assumes A has
// full row rank; fine for the tiny systems the tests build.
struct VertexBounds {
    bool feasible = false;
    Rat lo;
    Rat hi;
};

inline std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m,
                                                    std::vector<Rat> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        for (std::size_t row = col; row < n; ++row)
            if (!m[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        Rat pv = m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] /= pv;
        rhs[col] /= pv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rat f = m[row][col];
            for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    return rhs;
}

inline VertexBounds vertex_enum_bounds(const std::vector<std::vector<Rat>>& a,
                                       const std::vector<Rat>& b, const std::vector<Rat>& c) {
    const std::size_t rows = a.size();
    const std::size_t cols = c.size();
    VertexBounds result;
    std::vector<std::size_t> pick(rows);
    // iterate over ordered combinations of column indices
    std::vector<std::size_t> comb(rows);
    std::iota(comb.begin(), comb.end(), 0);
    auto advance = [&]() {
        for (std::size_t k = rows; k-- > 0;) {
            if (++comb[k] <= cols - (rows - k)) {
                for (std::size_t j = k + 1; j < rows; ++j) comb[j] = comb[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (rows == 0 || cols < rows) return result;
    do {
        std::vector<std::vector<Rat>> square(rows, std::vector<Rat>(rows));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < rows; ++k) square[i][k] = a[i][comb[k]];
        auto sol = solve_square(square, b);
        if (!sol) continue;
        bool nonneg = true;
        for (const Rat& v : *sol) nonneg &= v >= 0;
        if (!nonneg) continue;
        Rat value = 0;
        for (std::size_t k = 0; k < rows; ++k) value += c[comb[k]] * (*sol)[k];
        if (!result.feasible) {
            result = {true, value, value};
        } else {
            if (value < result.lo) result.lo = value;
            if (value > result.hi) result.hi = value;
        }
    } while (advance());
    return result;
}

// ---------------------------------------------------------------------------
// Oracle 3: (conditional) dependence via 2x2 minors. A discrete joint is
// independent exactly when its contingency matrix has rank one, i.e. every
// 2x2 minor vanishes; conditioning restricts to a stratum slice. This never
// forms marginals, unlike the implementation under test.
inline bool minors_show_dependence(const std::vector<std::vector<Rat>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t r1 = 0; r1 < rows; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < rows; ++r2)
            for (std::size_t c1 = 0; c1 < cols; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < cols; ++c2)
                    if (m[r1][c1] * m[r2][c2] != m[r1][c2] * m[r2][c1]) return true;
    return false;
}

// axes: 0=T, 1=X, 2=Y; conditional axis -1 for none
inline bool oracle_dependent(const CountTable& table, int axis_a, int axis_b, int axis_c) {
    auto level = [&](int axis, int t, int x, int y) { return axis == 0 ? t : axis == 1 ? x : y; };
    auto size = [&](int axis) {
        return axis == 0   ? static_cast<int>(table.treatments().size())
               : axis == 1 ? static_cast<int>(table.covariates().size())
                           : table.labels().size();
    };
    int nc = axis_c < 0 ? 1 : size(axis_c);
    for (int cval = 0; cval < nc; ++cval) {
        std::vector<std::vector<Rat>> m(static_cast<std::size_t>(size(axis_a)),
                                        std::vector<Rat>(static_cast<std::size_t>(size(axis_b)),
                                                         Rat(0)));
        for (int t = 0; t < static_cast<int>(table.treatments().size()); ++t)
            for (int x = 0; x < static_cast<int>(table.covariates().size()); ++x)
                for (int y = 0; y < table.labels().size(); ++y) {
                    if (axis_c >= 0 && level(axis_c, t, x, y) != cval) continue;
                    m[static_cast<std::size_t>(level(axis_a, t, x, y))]
                     [static_cast<std::size_t>(level(axis_b, t, x, y))] += table.count(t, x, y);
                }
        if (minors_show_dependence(m)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Kahn's algorithm; the reference for acyclicity of majority digraphs.
inline bool topologically_acyclic(const std::vector<std::vector<char>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j]) ++indegree[j];
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) queue.push_back(i);
    std::size_t removed = 0;
    while (!queue.empty()) {
        std::size_t v = queue.back();
        queue.pop_back();
        ++removed;
        for (std::size_t j = 0; j < n; ++j)
            if (adj[v][j] && --indegree[j] == 0) queue.push_back(j);
    }
    return removed == n;
}

} // namespace egtest
