#include "eg/scenario.hpp"

#include "eg/error.hpp"

#include <algorithm>
#include <set>

namespace eg {

namespace {

void check_unique(const std::vector<std::string>& names, const char* what) {
    std::set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty())
            throw Error(ErrorCode::invariant, std::string("empty ") + what + " name");
        if (!seen.insert(name).second)
            throw Error(ErrorCode::invariant, std::string("duplicate ") + what + " '" + name + "'");
    }
}

// Restriction validated against the table; returns kept label indices.
std::vector<int> kept_indices(const CountTable& c, const DomainRestriction& restrict) {
    if (restrict.kept_labels.size() < 2)
        throw Error(ErrorCode::invariant, "restriction must keep at least two labels");
    std::vector<int> kept;
    std::set<int> seen;
    for (const auto& name : restrict.kept_labels) {
        int idx = c.labels().index(name);
        if (!seen.insert(idx).second)
            throw Error(ErrorCode::invariant, "restriction repeats label '" + name + "'");
        kept.push_back(idx);
    }
    return kept;
}

int kept_position(const std::vector<int>& kept, int label, const std::string& name) {
    auto it = std::find(kept.begin(), kept.end(), label);
    if (it == kept.end())
        throw Error(ErrorCode::invariant, "label '" + name + "' is outside the restriction");
    return static_cast<int>(it - kept.begin());
}

// n(t, x) over the kept labels
Rat cell_total(const CountTable& c, const std::vector<int>& kept, int t, int x) {
    Rat sum = 0;
    for (int y : kept) sum += c.count(t, x, y);
    return sum;
}

} // namespace

CountTable::CountTable(std::vector<std::string> treatments, std::vector<std::string> covariates,
                       LabelSet labels, std::vector<std::vector<std::vector<Rat>>> counts)
    : treatments_(std::move(treatments)), covariates_(std::move(covariates)),
      labels_(std::move(labels)), counts_(std::move(counts)) {
    check_unique(treatments_, "treatment");
    check_unique(covariates_, "covariate");
    if (covariates_.empty())
        throw Error(ErrorCode::invariant, "count table needs at least one covariate");
    std::size_t t_dim = treatments_.empty() ? 1 : treatments_.size();
    if (counts_.size() != t_dim)
        throw Error(ErrorCode::invariant, "count table has " + std::to_string(counts_.size()) +
                                              " treatment slices, expected " + std::to_string(t_dim));
    for (const auto& slice : counts_) {
        if (slice.size() != covariates_.size())
            throw Error(ErrorCode::invariant, "count table slice has " +
                                                  std::to_string(slice.size()) +
                                                  " covariate rows, expected " +
                                                  std::to_string(covariates_.size()));
        for (const auto& row : slice) {
            if (static_cast<int>(row.size()) != labels_.size())
                throw Error(ErrorCode::invariant,
                            "count row has " + std::to_string(row.size()) + " entries, expected " +
                                std::to_string(labels_.size()));
            for (const Rat& v : row)
                if (v < 0)
                    throw Error(ErrorCode::invariant,
                                "negative count " + rat_to_string(v));
        }
    }
}

int CountTable::treatment_index(const std::string& t) const {
    for (std::size_t i = 0; i < treatments_.size(); ++i)
        if (treatments_[i] == t) return static_cast<int>(i);
    throw Error(ErrorCode::unknown_treatment, "unknown treatment '" + t + "'");
}

int CountTable::covariate_index(const std::string& x) const {
    for (std::size_t i = 0; i < covariates_.size(); ++i)
        if (covariates_[i] == x) return static_cast<int>(i);
    throw Error(ErrorCode::unknown_covariate, "unknown covariate '" + x + "'");
}

const Rat& CountTable::count(int t, int x, int y) const {
    return counts_.at(static_cast<std::size_t>(t))
        .at(static_cast<std::size_t>(x))
        .at(static_cast<std::size_t>(y));
}

Rat CountTable::marginal_count(int x, int y) const {
    Rat sum = 0;
    for (const auto& slice : counts_)
        sum += slice.at(static_cast<std::size_t>(x)).at(static_cast<std::size_t>(y));
    return sum;
}

Rat reweighted_prevalence(const CountTable& c, const DomainRestriction& restrict,
                          const std::map<std::string, Rat>& target_x, const std::string& label) {
    std::vector<int> kept = kept_indices(c, restrict);
    int y = c.labels().index(label);
    kept_position(kept, y, label);

    if (target_x.size() != c.covariates().size())
        throw Error(ErrorCode::unknown_covariate,
                    "target weights must name every covariate exactly once");
    Rat total_weight = 0;
    for (const auto& [x_name, w] : target_x) {
        c.covariate_index(x_name);
        if (w < 0)
            throw Error(ErrorCode::invariant,
                        "negative target weight for covariate '" + x_name + "'");
        total_weight += w;
    }
    if (total_weight == 0)
        throw Error(ErrorCode::invariant, "target weights sum to zero");

    Rat value = 0;
    for (const auto& [x_name, w] : target_x) {
        int x = c.covariate_index(x_name);
        Rat stratum = 0;
        for (int k : kept) stratum += c.marginal_count(x, k);
        if (stratum == 0)
            throw Error(ErrorCode::degenerate_stratum,
                        "covariate stratum '" + x_name + "' is empty under the restriction");
        if (w.is_zero()) continue;
        value += (w / total_weight) * (c.marginal_count(x, y) / stratum);
    }
    return value;
}

Rat backdoor_do(const CountTable& c, const DomainRestriction& restrict, const std::string& t,
                const std::string& label) {
    if (!c.has_treatments())
        throw Error(ErrorCode::unknown_treatment, "count table has no treatment column");
    std::vector<int> kept = kept_indices(c, restrict);
    int y = c.labels().index(label);
    kept_position(kept, y, label);
    int ti = c.treatment_index(t);

    int nx = static_cast<int>(c.covariates().size());
    int nt = static_cast<int>(c.treatments().size());
    // marginal Pr(x) over the restricted table, all treatments pooled
    std::vector<Rat> x_mass(static_cast<std::size_t>(nx), Rat(0));
    Rat total = 0;
    for (int x = 0; x < nx; ++x) {
        for (int s = 0; s < nt; ++s) x_mass[static_cast<std::size_t>(x)] += cell_total(c, kept, s, x);
        total += x_mass[static_cast<std::size_t>(x)];
    }

    Rat value = 0;
    for (int x = 0; x < nx; ++x) {
        Rat cell = cell_total(c, kept, ti, x);
        if (cell == 0)
            throw Error(ErrorCode::zero_cell, "cell (" + t + ", " + c.covariates()[static_cast<std::size_t>(x)] +
                                                  ") is empty under the restriction");
        value += (x_mass[static_cast<std::size_t>(x)] / total) * (c.count(ti, x, y) / cell);
    }
    return value;
}

Rat ate(const CountTable& c, const DomainRestriction& restrict, const std::string& t1,
        const std::string& t0, const std::string& label) {
    return backdoor_do(c, restrict, t1, label) - backdoor_do(c, restrict, t0, label);
}

namespace {

// E_ps[1[Y=y] | t] in the pseudo-population where each datapoint carries
// weight 1/Pr(t|x).
Rat pseudo_expectation(const CountTable& c, const std::vector<int>& kept, int ti,
                       const std::string& t_name, int y) {
    int nx = static_cast<int>(c.covariates().size());
    int nt = static_cast<int>(c.treatments().size());
    Rat numer = 0;
    Rat denom = 0;
    for (int x = 0; x < nx; ++x) {
        Rat treated = cell_total(c, kept, ti, x);
        Rat stratum = 0;
        for (int s = 0; s < nt; ++s) stratum += cell_total(c, kept, s, x);
        if (treated == 0 || stratum == 0)
            throw Error(ErrorCode::zero_propensity,
                        "propensity of (" + t_name + ", " +
                            c.covariates()[static_cast<std::size_t>(x)] +
                            ") vanishes under the restriction");
        Rat weight = stratum / treated; // 1 / Pr(t | x)
        numer += c.count(ti, x, y) * weight;
        denom += treated * weight;
    }
    return numer / denom;
}

} // namespace

Rat ipw_ate(const CountTable& c, const DomainRestriction& restrict, const std::string& t1,
            const std::string& t0, const std::string& label) {
    if (!c.has_treatments())
        throw Error(ErrorCode::unknown_treatment, "count table has no treatment column");
    std::vector<int> kept = kept_indices(c, restrict);
    int y = c.labels().index(label);
    kept_position(kept, y, label);
    return pseudo_expectation(c, kept, c.treatment_index(t1), t1, y) -
           pseudo_expectation(c, kept, c.treatment_index(t0), t0, y);
}

PanelReport run_panel(const CountTable& c,
                      const std::vector<std::pair<std::string, std::string>>& pairs,
                      const PanelMethod& method) {
    PanelReport report;
    int n = c.labels().size();
    std::vector<std::vector<char>> beats(static_cast<std::size_t>(n),
                                         std::vector<char>(static_cast<std::size_t>(n), 0));
    std::set<std::pair<int, int>> seen;
    const Rat half(1, 2);

    for (const auto& [first, second] : pairs) {
        int a = c.labels().index(first);
        int b = c.labels().index(second);
        if (a == b)
            throw Error(ErrorCode::identical_labels, "panel pair repeats label '" + first + "'");
        if (!seen.insert(std::minmax(a, b)).second)
            throw Error(ErrorCode::invariant,
                        "panel lists the pair {" + first + ", " + second + "} twice");

        DomainRestriction restrict{{first, second}};
        PanelEntry entry;
        entry.first = first;
        entry.second = second;
        switch (method.kind) {
        case PanelMethod::Kind::reweight_uniform:
        case PanelMethod::Kind::reweight_observed: {
            std::map<std::string, Rat> target;
            if (method.kind == PanelMethod::Kind::reweight_uniform) {
                for (const auto& x : c.covariates()) target[x] = 1;
            } else {
                for (std::size_t x = 0; x < c.covariates().size(); ++x) {
                    Rat mass = c.marginal_count(static_cast<int>(x), a) +
                               c.marginal_count(static_cast<int>(x), b);
                    target[c.covariates()[x]] = mass;
                }
            }
            entry.value = reweighted_prevalence(c, restrict, target, first);
            if (entry.value > half) entry.preferred = first;
            else if (entry.value < half) entry.preferred = second;
            entry.margin = boost::multiprecision::abs(Rat(entry.value - half));
            break;
        }
        case PanelMethod::Kind::backdoor:
        case PanelMethod::Kind::ipw: {
            entry.value = method.kind == PanelMethod::Kind::backdoor
                              ? ate(c, restrict, method.t1, method.t0, first)
                              : ipw_ate(c, restrict, method.t1, method.t0, first);
            if (entry.value > 0) entry.preferred = first;
            else if (entry.value < 0) entry.preferred = second;
            entry.margin = boost::multiprecision::abs(entry.value);
            break;
        }
        }
        if (entry.preferred) {
            int winner = *entry.preferred == first ? a : b;
            int loser = winner == a ? b : a;
            beats[static_cast<std::size_t>(winner)][static_cast<std::size_t>(loser)] = 1;
        }
        report.pairwise.push_back(std::move(entry));
    }

    auto cycles = detail::directed_cycles(beats, n, /*first_only=*/true);
    if (!cycles.empty()) {
        Cycle cycle;
        for (int idx : cycles.front()) cycle.vertices.push_back(c.labels().name(idx));
        report.cycle = std::move(cycle);
    }
    return report;
}

CountTable greek_table(const Rat& alpha1, const Rat& beta1, const Rat& gamma1, const Rat& alpha2,
                       const Rat& beta2, const Rat& gamma2) {
    for (const Rat* coef : {&alpha1, &beta1, &gamma1, &alpha2, &beta2, &gamma2})
        if (*coef <= 0)
            throw Error(ErrorCode::invariant,
                        "nonpositive coefficient " + rat_to_string(*coef));
    std::vector<std::vector<std::vector<Rat>>> counts{
        {{2 * alpha1, alpha1, Rat(0)}, {Rat(0), 2 * beta1, beta1}, {gamma1, Rat(0), 2 * gamma1}},
        {{Rat(0), alpha2, 2 * alpha2}, {2 * beta2, Rat(0), beta2}, {gamma2, 2 * gamma2, Rat(0)}},
    };
    return CountTable({"t1", "t0"}, {"x1", "x2", "x3"},
                      LabelSet({"Cancer", "Virus", "Allergies"}), std::move(counts));
}

namespace {

// Axis accessors pick one coordinate of a joint cell.
struct Axis {
    int size;
    int (*pick)(int, int, int);
};

constexpr Axis kAxisT{0, [](int t, int, int) { return t; }};
constexpr Axis kAxisX{0, [](int, int x, int) { return x; }};
constexpr Axis kAxisY{0, [](int, int, int y) { return y; }};

struct Joint {
    const CountTable& table;
    Rat total;
    int nt, nx, ny;

    template <typename Fn> void for_each(Fn&& fn) const {
        for (int t = 0; t < nt; ++t)
            for (int x = 0; x < nx; ++x)
                for (int y = 0; y < ny; ++y) {
                    const Rat& cnt = table.count(t, x, y);
                    if (!cnt.is_zero()) fn(t, x, y, cnt);
                }
    }
};

bool pairwise_dependent(const Joint& joint, Axis a, Axis b) {
    std::vector<Rat> pa(static_cast<std::size_t>(a.size), Rat(0));
    std::vector<Rat> pb(static_cast<std::size_t>(b.size), Rat(0));
    std::vector<std::vector<Rat>> pab(static_cast<std::size_t>(a.size),
                                      std::vector<Rat>(static_cast<std::size_t>(b.size), Rat(0)));
    joint.for_each([&](int t, int x, int y, const Rat& cnt) {
        int ia = a.pick(t, x, y);
        int ib = b.pick(t, x, y);
        pa[static_cast<std::size_t>(ia)] += cnt;
        pb[static_cast<std::size_t>(ib)] += cnt;
        pab[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] += cnt;
    });
    // counts compare like probabilities once scaled: P(ab)*total == P(a)*P(b)
    for (int ia = 0; ia < a.size; ++ia)
        for (int ib = 0; ib < b.size; ++ib)
            if (pab[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] * joint.total !=
                pa[static_cast<std::size_t>(ia)] * pb[static_cast<std::size_t>(ib)])
                return true;
    return false;
}

ConditionResult conditional_dependent(const Joint& joint, Axis a, Axis b, Axis c,
                                      std::string name) {
    ConditionResult result{std::move(name), false, 0};
    std::vector<Rat> pc(static_cast<std::size_t>(c.size), Rat(0));
    std::vector<std::vector<std::vector<Rat>>> pabc(
        static_cast<std::size_t>(a.size),
        std::vector<std::vector<Rat>>(static_cast<std::size_t>(b.size),
                                      std::vector<Rat>(static_cast<std::size_t>(c.size), Rat(0))));
    std::vector<std::vector<Rat>> pac(static_cast<std::size_t>(a.size),
                                      std::vector<Rat>(static_cast<std::size_t>(c.size), Rat(0)));
    std::vector<std::vector<Rat>> pbc(static_cast<std::size_t>(b.size),
                                      std::vector<Rat>(static_cast<std::size_t>(c.size), Rat(0)));
    joint.for_each([&](int t, int x, int y, const Rat& cnt) {
        int ia = a.pick(t, x, y);
        int ib = b.pick(t, x, y);
        int ic = c.pick(t, x, y);
        pc[static_cast<std::size_t>(ic)] += cnt;
        pabc[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)][static_cast<std::size_t>(ic)] += cnt;
        pac[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ic)] += cnt;
        pbc[static_cast<std::size_t>(ib)][static_cast<std::size_t>(ic)] += cnt;
    });
    for (int ic = 0; ic < c.size; ++ic) {
        if (pc[static_cast<std::size_t>(ic)].is_zero()) {
            ++result.skipped_strata;
            continue;
        }
        for (int ia = 0; ia < a.size && !result.dependent; ++ia)
            for (int ib = 0; ib < b.size; ++ib)
                if (pabc[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)]
                         [static_cast<std::size_t>(ic)] *
                        pc[static_cast<std::size_t>(ic)] !=
                    pac[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ic)] *
                        pbc[static_cast<std::size_t>(ib)][static_cast<std::size_t>(ic)]) {
                    result.dependent = true;
                    break;
                }
    }
    return result;
}

} // namespace

FaithfulnessReport faithfulness_check(const CountTable& c) {
    if (!c.has_treatments())
        throw Error(ErrorCode::invariant, "faithfulness conditions need a treatment column");
    Joint joint{c, Rat(0), static_cast<int>(c.treatments().size()),
                static_cast<int>(c.covariates().size()), c.labels().size()};
    joint.for_each([&](int, int, int, const Rat& cnt) { joint.total += cnt; });
    if (joint.total == 0)
        throw Error(ErrorCode::invariant, "count table is empty, nothing to normalize");

    Axis axis_t{joint.nt, kAxisT.pick};
    Axis axis_x{joint.nx, kAxisX.pick};
    Axis axis_y{joint.ny, kAxisY.pick};

    FaithfulnessReport report{{
        ConditionResult{"T~Y", pairwise_dependent(joint, axis_t, axis_y), 0},
        ConditionResult{"X~Y", pairwise_dependent(joint, axis_x, axis_y), 0},
        ConditionResult{"T~X", pairwise_dependent(joint, axis_t, axis_x), 0},
        conditional_dependent(joint, axis_t, axis_y, axis_x, "T~Y|X"),
        conditional_dependent(joint, axis_x, axis_y, axis_t, "X~Y|T"),
        conditional_dependent(joint, axis_t, axis_x, axis_y, "T~X|Y"),
    }};
    return report;
}

} // namespace eg
