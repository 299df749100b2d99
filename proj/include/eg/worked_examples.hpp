#pragma once

#include "eg/decompose.hpp"
#include "eg/prob_table.hpp"
#include "eg/scenario.hpp"

namespace eg::worked {

/// 3x3 diagnosis counts over {Cancer, Virus, Allergies}, no treatments; each
/// label column is the previous one shifted down a row, so every restricted
/// pair tells the same story.
CountTable diagnosis_counts();

/// Two-treatment version of the same pattern; the second treatment holds the
/// additive complements so the covariate marginal stays uniform.
CountTable confounded_counts();

/// Three states rotating the row (.90, .09, .01) across three labels, uniform
/// state distribution. Its aggregate graph is the cyclic 0.6067... example.
ProbabilityTable rotating_state_table();

/// Single state with row (.5, .3, .2) over Y1, Y2, Y3.
ProbabilityTable first_choice_table();

/// Uniform weight on the three cyclic shifts of (Y1, Y2, Y3); synthesizes to
/// the 2/3-cycle.
RankingDistribution cyclic_uniform_distribution();

} // namespace eg::worked
