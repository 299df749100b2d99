#pragma once

#include "eg/graph.hpp"
#include "eg/labels.hpp"
#include "eg/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eg {

/// Population counts over (treatment, covariate, label) cells. Treatments may
/// be absent entirely (purely observational tables); counts are nonnegative
/// rationals. Cell positivity is checked by the operations that condition on
/// a cell, not at construction.
class CountTable {
public:
    CountTable(std::vector<std::string> treatments, std::vector<std::string> covariates,
               LabelSet labels, std::vector<std::vector<std::vector<Rat>>> counts);

    const std::vector<std::string>& treatments() const { return treatments_; }
    const std::vector<std::string>& covariates() const { return covariates_; }
    const LabelSet& labels() const { return labels_; }
    bool has_treatments() const { return !treatments_.empty(); }

    int treatment_index(const std::string& t) const;
    int covariate_index(const std::string& x) const;

    /// Count of one cell; the treatment index must be 0 when untreated.
    const Rat& count(int t, int x, int y) const;
    /// Count marginalized over treatments.
    Rat marginal_count(int x, int y) const;

    const std::vector<std::vector<std::vector<Rat>>>& raw() const { return counts_; }

    friend bool operator==(const CountTable& a, const CountTable& b) {
        return a.treatments_ == b.treatments_ && a.covariates_ == b.covariates_ &&
               a.labels_ == b.labels_ && a.counts_ == b.counts_;
    }

private:
    std::vector<std::string> treatments_;
    std::vector<std::string> covariates_;
    LabelSet labels_;
    std::vector<std::vector<std::vector<Rat>>> counts_; // [t][x][y], t-dim 1 when untreated
};

/// The labels a domain expert can see. Everything else is conditioned away.
struct DomainRestriction {
    std::vector<std::string> kept_labels;
};

/// Prevalence of `label` after restricting to the kept labels and re-weighting
/// covariate strata to `target_x` (weights are normalized; every stratum must
/// retain positive mass). Treatments, if any, are marginalized out.
Rat reweighted_prevalence(const CountTable& c, const DomainRestriction& restrict,
                          const std::map<std::string, Rat>& target_x, const std::string& label);

/// Interventional probability by backdoor adjustment on the restricted table:
/// sum over x of Pr(x) * Pr(label | x, t), with Pr(x) the all-treatment
/// marginal.
Rat backdoor_do(const CountTable& c, const DomainRestriction& restrict, const std::string& t,
                const std::string& label);

/// Average treatment effect: backdoor_do(t1) - backdoor_do(t0).
Rat ate(const CountTable& c, const DomainRestriction& restrict, const std::string& t1,
        const std::string& t0, const std::string& label);

/// Same contrast through the inverse-propensity pseudo-population: datapoints
/// weighted by 1/Pr(t|x), then the difference of weighted label frequencies.
Rat ipw_ate(const CountTable& c, const DomainRestriction& restrict, const std::string& t1,
            const std::string& t0, const std::string& label);

struct PanelMethod {
    enum class Kind { reweight_uniform, reweight_observed, backdoor, ipw };
    Kind kind = Kind::reweight_uniform;
    std::string t1; // causal methods only
    std::string t0;

    static PanelMethod reweight_uniform() { return {Kind::reweight_uniform, "", ""}; }
    static PanelMethod reweight_observed() { return {Kind::reweight_observed, "", ""}; }
    static PanelMethod backdoor(std::string t1, std::string t0) {
        return {Kind::backdoor, std::move(t1), std::move(t0)};
    }
    static PanelMethod ipw(std::string t1, std::string t0) {
        return {Kind::ipw, std::move(t1), std::move(t0)};
    }
};

struct PanelEntry {
    std::string first;
    std::string second;
    /// Label favored by the method; empty on an exact tie.
    std::optional<std::string> preferred;
    /// Restricted prevalence of `first` (reweight methods) or its ATE.
    Rat value;
    /// |value - 1/2| for prevalences, |ATE| for the causal methods.
    Rat margin;
};

struct PanelReport {
    std::vector<PanelEntry> pairwise;
    std::optional<Cycle> cycle;
};

/// Runs one restricted expert per pair and aggregates their conclusions into
/// a majority tournament, reporting a preference cycle when one exists.
PanelReport run_panel(const CountTable& c,
                      const std::vector<std::pair<std::string, std::string>>& pairs,
                      const PanelMethod& method);

/// The six-row two-treatment count pattern over {Cancer, Virus, Allergies}
/// whose rows are scaled by the given positive coefficients. All ones gives
/// the base confounded table.
CountTable greek_table(const Rat& alpha1, const Rat& beta1, const Rat& gamma1, const Rat& alpha2,
                       const Rat& beta2, const Rat& gamma2);

struct ConditionResult {
    std::string name;
    bool dependent = false;
    /// Conditioning strata skipped for zero probability.
    int skipped_strata = 0;
};

/// The six (conditional) dependence requirements, decided exactly on the
/// normalized joint: T-Y, X-Y, T-X, T-Y|X, X-Y|T, T-X|Y.
using FaithfulnessReport = std::array<ConditionResult, 6>;

FaithfulnessReport faithfulness_check(const CountTable& c);

} // namespace eg
