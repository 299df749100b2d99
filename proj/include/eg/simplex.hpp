#pragma once

#include "eg/rational.hpp"

#include <vector>

namespace eg::lp {

enum class Status { optimal, infeasible, unbounded };

/// Equality-form program: minimize c.x subject to a x = b, x >= 0.
struct Problem {
    std::vector<std::vector<Rat>> a; // rows x cols
    std::vector<Rat> b;              // rows
    std::vector<Rat> c;              // cols
};

struct Solution {
    Status status = Status::infeasible;
    Rat objective;      // value of c.x at the optimum
    std::vector<Rat> x; // optimal point (empty unless optimal)
};

/// Two-phase dense tableau simplex over exact rationals, pivoting by Bland's
/// rule throughout. Deterministic: identical inputs give identical verdicts,
/// bases and solutions on every platform.
Solution solve(const Problem& problem);

} // namespace eg::lp
