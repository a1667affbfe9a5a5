#pragma once

#include <string>
#include <vector>

#include "rsum/distribution.hpp"
#include "rsum/mirroring.hpp"
#include "rsum/partition.hpp"
#include "rsum/prover.hpp"
#include "rsum/rational.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VectorReport {
    std::string weights;
    std::string case_label;
    std::vector<CheckResult> checks;
    bool all_pass = true;

    void add(std::string name, bool pass, std::string details = "") {
        all_pass = all_pass && pass;
        checks.push_back({std::move(name), pass, std::move(details)});
    }
};

// Runs every enumeration-backed identity and inequality that applies to the
// vector: reflection law preservation, the interval-partition identities, the
// band and first-cell bounds, the big-prefix inequality and both escape
// dichotomies. All checks are exact.
inline VectorReport verify_vector(const WeightVector& a, std::size_t desk_limit = 14) {
    VectorReport report;
    report.weights = a.to_string();
    CaseLabel label = classify(a);
    report.case_label = case_name(label);
    const std::size_t n = a.n();

    auto law_check = [&](const char* name, const ReflectionSpec& spec, std::size_t process_len) {
        if (process_len > desk_limit) return;
        bool ok = check_distribution_equality(a, spec);
        report.add(std::string("reflection_law_equality/") + name, ok);
    };
    law_check("top_escape", spec_top_escape(), n);
    if (n >= 3) law_check("residual_band_low", spec_residual_band_low(a), n - 2);
    if (n >= 3) law_check("residual_band_high", spec_residual_band_high(a), n - 2);
    if (n >= 4) law_check("tail_split", spec_tail_split(), n - 3);
    law_check("reverse_ladder", spec_reverse_ladder(a), n);

    if (n <= 3) {
        if (n == 3) {
            Rational s1 = a[0] - a[1] + a[2];
            Rational s2 = -a[0] + a[1] + a[2];
            bool ok = s1 * s1 <= 1 && s2 * s2 <= 1;
            report.add("base_cross_sums", ok,
                       "|a1-a2+a3| and |a1-a2-a3| both at most 1");
        } else {
            report.add("base_trivial", true);
        }
        return report;
    }

    const bool mid1_range = make_rational(1, 4) <= a[2] && a[2] <= a[0] && a[0] <= make_rational(49, 100);
    const bool small_a_range = a[0] + a[1] <= 1 && a[2] <= make_rational(1, 4);
    const bool mid2_range = make_rational(49, 100) <= a[0] && a[0] <= make_rational(67, 100);

    if (mid1_range && n - 2 <= desk_limit) {
        SumDistribution tail = distribution_of(a.suffix(3));
        IntervalPartition part = build_seven_intervals(a[0], a[1]);
        PartitionProbabilities p = interval_probabilities(tail, part);

        Rational exceed = exceedance_probability(p, part);
        Rational complement = 1 - prob_abs_within(a, Rational(1));
        report.add("exceedance_identity_seven", exceed == complement,
                   fraction_string(exceed) + " vs " + fraction_string(complement));
        report.add("cell_masses_sum", p.sum() == 1);

        Rational band345 = p.p[2] + p.p[3] + p.p[4];
        Rational band456 = p.p[3] + p.p[4] + p.p[5];
        report.add("band_345", band345 <= make_rational(1, 2), fraction_string(band345));
        report.add("band_456", band456 <= make_rational(1, 2), fraction_string(band456));

        report.add("band_345_pathwise",
                   check_band_exclusion(a, spec_residual_band_low(a),
                                        Interval{part.interval(3).lower, part.interval(5).upper, false, true}));
        report.add("band_456_pathwise",
                   check_band_exclusion(a, spec_residual_band_high(a),
                                        Interval{part.interval(4).lower, part.interval(6).upper, false, true}));

        Rational smom = second_moment_lhs(p, part);
        Rational cap = 1 - a[0] * a[0] - a[1] * a[1];
        report.add("second_moment_cap", smom <= cap, fraction_string(smom) + " <= " + fraction_string(cap));

        if (a[0] + a[1] <= grid::kIndicatorCut) {
            report.add("first_cell_floor", p.p[0] >= grid::kIndicatorFloor, fraction_string(p.p[0]));
            if (n >= 4) {
                TripleSplitReport ts = check_triple_split_lemma(a);
                report.add("triple_split/tau_choice", ts.tau_choice_exists);
                report.add("triple_split/flipped_laws", ts.flipped_laws_equal);
                report.add("triple_split/tail_mass", ts.tail_mass_ok, fraction_string(ts.p_tail_within));
            }
        }
    }

    if (small_a_range && n <= desk_limit) {
        report.add("escape_dichotomy_forward", check_escape_implication(a, spec_top_escape()));
        Rational joint = joint_failure_probability(a, spec_top_escape(), Rational(1));
        report.add("mirror_failure_exact", joint < constants::kFailureThreshold, fraction_string(joint));
    }

    if (mid2_range) {
        BigSmallSplit split = split_big_small(a);
        try {
            auto checks = check_sum_lemma(a, split);
            report.add("big_prefix_sum", true, std::to_string(checks.size()) + " prefixes checked");
        } catch (const LemmaViolated& e) {
            report.add("big_prefix_sum", false, e.what());
        }
        bool has_small_quarter = split.k < n && a[split.k] >= make_rational(1, 4);
        if (has_small_quarter && n - 2 <= desk_limit) {
            std::size_t j = split.k + 1;
            SumDistribution tail = distribution_of(a.excluding({1, j}));
            IntervalPartition part = build_five_intervals(a[0], a[j - 1]);
            PartitionProbabilities p = interval_probabilities(tail, part);
            Rational exceed = exceedance_probability(p, part);
            Rational complement = 1 - prob_abs_within(a, Rational(1));
            report.add("exceedance_identity_five", exceed == complement,
                       fraction_string(exceed) + " vs " + fraction_string(complement));
            report.add("cell_masses_sum_five", p.sum() == 1);
        }
        if (!has_small_quarter && n <= desk_limit) {
            report.add("escape_dichotomy_reverse", check_escape_implication(a, spec_reverse_ladder(a)));
            Rational joint = joint_failure_probability(a, spec_reverse_ladder(a), Rational(1));
            report.add("mirror_failure_exact_reverse", joint < constants::kFailureThreshold,
                       fraction_string(joint));
        }
    }
    return report;
}

}  // namespace rsum
