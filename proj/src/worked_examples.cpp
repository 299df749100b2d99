#include "eg/worked_examples.hpp"

namespace eg::worked {

CountTable diagnosis_counts() {
    std::vector<std::vector<std::vector<Rat>>> counts{{
        {Rat(2), Rat(1), Rat(0)},
        {Rat(0), Rat(2), Rat(1)},
        {Rat(1), Rat(0), Rat(2)},
    }};
    return CountTable({}, {"x1", "x2", "x3"}, LabelSet({"Cancer", "Virus", "Allergies"}),
                      std::move(counts));
}

CountTable confounded_counts() { return greek_table(1, 1, 1, 1, 1, 1); }

ProbabilityTable rotating_state_table() {
    const Rat a(90, 100), b(9, 100), c(1, 100);
    return ProbabilityTable(LabelSet({"Y1", "Y2", "Y3"}), {"u1", "u2", "u3"},
                            {{a, b, c}, {c, a, b}, {b, c, a}},
                            {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

ProbabilityTable first_choice_table() {
    return ProbabilityTable::single_state(LabelSet({"Y1", "Y2", "Y3"}),
                                          {Rat(1, 2), Rat(3, 10), Rat(1, 5)});
}

RankingDistribution cyclic_uniform_distribution() {
    std::map<std::vector<int>, Rat> weights{
        {{0, 1, 2}, Rat(1, 3)},
        {{1, 2, 0}, Rat(1, 3)},
        {{2, 0, 1}, Rat(1, 3)},
    };
    return RankingDistribution(LabelSet({"Y1", "Y2", "Y3"}), std::move(weights));
}

} // namespace eg::worked
