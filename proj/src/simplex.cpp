#include "eg/simplex.hpp"

#include "eg/error.hpp"

#include <cstddef>

namespace eg::lp {

namespace {

// Dense tableau with an explicit reduced-cost row. Column layout is
// [structural | artificial | rhs] in phase 1 and [structural | rhs] in
// phase 2.
struct Tableau {
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> cost; // reduced costs; cost[rhs] = -objective
    std::vector<int> basis;
    std::size_t rhs;

    void pivot(std::size_t leave, std::size_t enter) {
        std::vector<Rat>& prow = rows[leave];
        const Rat pv = prow[enter];
        std::vector<std::size_t> live;
        live.reserve(prow.size());
        for (std::size_t j = 0; j <= rhs; ++j) {
            if (prow[j].is_zero()) continue;
            if (j != enter) prow[j] /= pv;
            live.push_back(j);
        }
        prow[enter] = 1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == leave) continue;
            eliminate(rows[i], prow, enter, live);
        }
        eliminate(cost, prow, enter, live);
        basis[leave] = static_cast<int>(enter);
    }

    // row -= row[enter] * prow over prow's support, through raw mpq calls to
    // spare a temporary per cell
    static void eliminate(std::vector<Rat>& row, const std::vector<Rat>& prow, std::size_t enter,
                          const std::vector<std::size_t>& live) {
        const Rat factor = row[enter];
        if (factor.is_zero()) return;
        mpq_t product;
        mpq_init(product);
        for (std::size_t j : live) {
            mpq_mul(product, factor.backend().data(), prow[j].backend().data());
            mpq_sub(row[j].backend().data(), row[j].backend().data(), product);
        }
        mpq_clear(product);
        row[enter] = 0; // exact by construction; keep it literal
    }

    // Bland: smallest eligible column enters, smallest basic variable leaves.
    // Returns optimal / unbounded.
    Status iterate(const std::vector<char>& allowed) {
        for (;;) {
            std::size_t enter = rhs;
            for (std::size_t j = 0; j < rhs; ++j) {
                if (allowed[j] && cost[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == rhs) return Status::optimal;

            std::size_t leave = rows.size();
            Rat best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Rat& coef = rows[i][enter];
                if (coef <= 0) continue;
                Rat ratio = rows[i][rhs] / coef;
                if (leave == rows.size() || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return Status::unbounded;
            pivot(leave, enter);
        }
    }
};

} // namespace

Solution solve(const Problem& problem) {
    const std::size_t m = problem.a.size();
    const std::size_t n = problem.c.size();
    if (problem.b.size() != m)
        throw Error(ErrorCode::invariant, "lp: right-hand side size mismatch");
    for (const auto& row : problem.a)
        if (row.size() != n) throw Error(ErrorCode::invariant, "lp: matrix width mismatch");

    // ---- phase 1: minimize the artificial total from the all-artificial basis
    Tableau t;
    t.rhs = n + m;
    t.rows.assign(m, std::vector<Rat>(n + m + 1));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = problem.b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            t.rows[i][j] = flip ? Rat(-problem.a[i][j]) : problem.a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.rhs] = flip ? Rat(-problem.b[i]) : problem.b[i];
        t.basis[i] = static_cast<int>(n + i);
    }
    t.cost.assign(n + m + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= t.rhs; ++j)
            if (j < n || j == t.rhs) t.cost[j] -= t.rows[i][j];

    std::vector<char> allowed(n + m, 0);
    for (std::size_t j = 0; j < n; ++j) allowed[j] = 1;
    Status s1 = t.iterate(allowed);
    if (s1 == Status::unbounded)
        throw Error(ErrorCode::invariant, "lp: phase 1 cannot be unbounded");
    if (!t.cost[t.rhs].is_zero()) return {Status::infeasible, Rat(0), {}};

    // pivot leftover zero-level artificials out; drop rows that are redundant
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < static_cast<int>(n)) {
            ++i;
            continue;
        }
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!t.rows[i][j].is_zero()) {
                enter = j;
                break;
            }
        }
        if (enter < n) {
            t.pivot(i, enter);
            ++i;
        } else {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // ---- phase 2: shrink to structural columns, install the real objective
    Tableau p;
    p.rhs = n;
    p.rows.assign(t.rows.size(), std::vector<Rat>(n + 1));
    p.basis = t.basis;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) p.rows[i][j] = t.rows[i][j];
        p.rows[i][n] = t.rows[i][t.rhs];
    }
    p.cost.assign(n + 1, Rat(0));
    for (std::size_t j = 0; j < n; ++j) p.cost[j] = problem.c[j];
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        const Rat& cb = problem.c[static_cast<std::size_t>(p.basis[i])];
        if (cb.is_zero()) continue;
        for (std::size_t j = 0; j <= n; ++j) {
            if (p.rows[i][j].is_zero()) continue;
            p.cost[j] -= cb * p.rows[i][j];
        }
    }

    std::vector<char> all(n, 1);
    Status s2 = p.iterate(all);
    if (s2 == Status::unbounded) return {Status::unbounded, Rat(0), {}};

    Solution sol;
    sol.status = Status::optimal;
    sol.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < p.rows.size(); ++i)
        sol.x[static_cast<std::size_t>(p.basis[i])] = p.rows[i][p.rhs];
    sol.objective = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (!sol.x[j].is_zero()) sol.objective += problem.c[j] * sol.x[j];
    return sol;
}

} // namespace eg::lp
