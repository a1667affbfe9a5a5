#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsum/distribution.hpp"
#include "rsum/errors.hpp"
#include "rsum/lp.hpp"
#include "rsum/mirroring.hpp"
#include "rsum/partition.hpp"
#include "rsum/programs.hpp"
#include "rsum/rational.hpp"
#include "rsum/tail_bounds.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

enum class CaseLabel { BaseSmallN, BigA1, SmallA, Mid1, Mid2 };

inline const char* case_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::BaseSmallN: return "base_small_n";
        case CaseLabel::BigA1: return "big_a1";
        case CaseLabel::SmallA: return "small_a";
        case CaseLabel::Mid1: return "mid_range_low";
        case CaseLabel::Mid2: return "mid_range_high";
    }
    return "?";
}

// One verifiable inequality of a certificate. `lhs` and `rhs` name entries of
// inputs/values (falling back to rational literals), so a replay needs only
// the recorded numbers.
struct Step {
    std::string rule;
    std::vector<std::pair<std::string, Rational>> inputs;
    std::vector<std::pair<std::string, Rational>> values;
    std::string lhs, relation, rhs;
    bool holds = false;
    std::string note;
};

enum class Soundness { Sound, Unsound, NotChecked };

struct ProofCertificate {
    CaseLabel label = CaseLabel::BaseSmallN;
    std::vector<Step> steps;
    Rational lower_bound;
    std::optional<Rational> exact_probability;
    Soundness sound = Soundness::NotChecked;
};

namespace detail {

inline std::optional<Rational> lookup(const Step& s, const std::string& key) {
    for (const auto& [k, v] : s.inputs) {
        if (k == key) return v;
    }
    for (const auto& [k, v] : s.values) {
        if (k == key) return v;
    }
    return std::nullopt;
}

inline Rational resolve(const Step& s, const std::string& key) {
    if (auto v = lookup(s, key)) return *v;
    return parse_rational(key);
}

inline Step make_step(std::string rule, std::vector<std::pair<std::string, Rational>> inputs,
                      std::vector<std::pair<std::string, Rational>> values, std::string lhs, std::string rel,
                      std::string rhs, std::string note = "") {
    Step s;
    s.rule = std::move(rule);
    s.inputs = std::move(inputs);
    s.values = std::move(values);
    s.lhs = std::move(lhs);
    s.relation = std::move(rel);
    s.rhs = std::move(rhs);
    s.note = std::move(note);
    Rational l = resolve(s, s.lhs), r = resolve(s, s.rhs);
    if (s.relation == "<=") s.holds = l <= r;
    else if (s.relation == "<") s.holds = l < r;
    else if (s.relation == ">=") s.holds = l >= r;
    else if (s.relation == ">") s.holds = l > r;
    else if (s.relation == "==") s.holds = l == r;
    else throw InvalidParameters("unknown relation " + s.relation);
    return s;
}

}  // namespace detail

// Re-evaluates every recorded inequality from the recorded numbers.
inline bool replay_certificate(const ProofCertificate& cert) {
    for (const auto& s : cert.steps) {
        Rational l = detail::resolve(s, s.lhs), r = detail::resolve(s, s.rhs);
        bool holds;
        if (s.relation == "<=") holds = l <= r;
        else if (s.relation == "<") holds = l < r;
        else if (s.relation == ">=") holds = l >= r;
        else if (s.relation == ">") holds = l > r;
        else if (s.relation == "==") holds = l == r;
        else return false;
        if (!holds || !s.holds) return false;
    }
    return true;
}

// Case dispatch. Precedence matters where the ranges touch: the two easy
// cases are preferred because their bounds need no linear program, and every
// valid vector lands somewhere (a1 <= 0.49 forces either a3 <= 0.25, which
// lands in small_a since a1 + a2 <= 0.98, or a3 >= 0.25 which is mid1).
inline CaseLabel classify(const WeightVector& a) {
    const std::size_t n = a.n();
    if (n <= 3) return CaseLabel::BaseSmallN;
    if (a[0] >= make_rational(67, 100)) return CaseLabel::BigA1;
    if (a[0] + a[1] <= 1 && a[2] <= make_rational(1, 4)) return CaseLabel::SmallA;
    if (make_rational(1, 4) <= a[2] && a[2] <= a[0] && a[0] <= make_rational(49, 100)) return CaseLabel::Mid1;
    return CaseLabel::Mid2;
}

// Desk-scale limits: when n is small enough the certificates re-derive the
// probabilistic premises by exact enumeration instead of citing them.
inline constexpr std::size_t kDeskScaleLimit = 16;
inline constexpr std::size_t kSoundnessLimit = 20;

inline ProofCertificate prove_base(const WeightVector& a) {
    if (a.n() > 3) throw OutOfCaseRange("base case needs n <= 3");
    ProofCertificate cert;
    cert.label = CaseLabel::BaseSmallN;
    if (a.n() == 1) {
        cert.steps.push_back(detail::make_step("single_weight", {{"a1", a[0]}}, {}, "a1", "==", "1"));
        cert.lower_bound = 1;
        return cert;
    }
    if (a.n() == 2) {
        Rational d = a[0] - a[1];
        cert.steps.push_back(detail::make_step("two_weight_gap", {{"a1", a[0]}, {"a2", a[1]}},
                                               {{"gap_sq", d * d}}, "gap_sq", "<=", "1",
                                               "(a1-a2)^2 = 1 - 2 a1 a2 <= 1; half of the four patterns"));
        cert.lower_bound = make_rational(1, 2);
        return cert;
    }
    // four of the eight sign patterns stay within [-1, 1]
    Rational s1 = a[0] - a[1] + a[2];
    Rational s2 = -a[0] + a[1] + a[2];
    cert.steps.push_back(detail::make_step("three_weight_cross_sum", {{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}},
                                           {{"s_plus_sq", s1 * s1}}, "s_plus_sq", "<=", "1"));
    cert.steps.push_back(detail::make_step("three_weight_cross_sum_alt", {{"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]}},
                                           {{"s_minus_sq", s2 * s2}}, "s_minus_sq", "<=", "1"));
    cert.lower_bound = make_rational(1, 2);
    return cert;
}

inline ProofCertificate prove_big_a1(const WeightVector& a) {
    if (a[0] < make_rational(67, 100)) throw OutOfCaseRange("big_a1 needs a1 >= 0.67");
    ProofCertificate cert;
    cert.label = CaseLabel::BigA1;

    // conditioning on the top sign halves the mass and shifts the window to
    // 1.67; the residual vector normalized by sqrt(1 - a1^2) has unit norm,
    // and 1.67 / sqrt(1 - a1^2) >= 2.24 exactly when 1.67^2 >= 2.24^2 (1 - a1^2)
    Rational residual_sq = 1 - a[0] * a[0];
    Rational lhs = make_rational(167, 100) * make_rational(167, 100);
    Rational rhs = constants::kBigA1TailPointExact * constants::kBigA1TailPointExact * residual_sq;
    cert.steps.push_back(detail::make_step("normalized_deviation_floor", {{"a1", a[0]}},
                                           {{"top_window_sq", lhs}, {"scaled_floor_sq", rhs}},
                                           "scaled_floor_sq", "<=", "top_window_sq"));

    double two_sided = 2.0 * bd_tail_bound(constants::kBigA1TailPoint);
    Rational two_sided_r = exact_from_double(two_sided);
    Rational complement = 1 - two_sided_r;
    cert.steps.push_back(detail::make_step(
        "gaussian_domination_tail", {{"x", constants::kBigA1TailPointExact}},
        {{"two_sided_tail", two_sided_r}, {"complement", complement}}, "complement", ">=", "4600/5000"));

    cert.lower_bound = complement / 2;
    cert.steps.push_back(detail::make_step("certified_bound", {}, {{"lower_bound", cert.lower_bound}},
                                           "lower_bound", ">=", fraction_string(constants::kTargetBound)));
    return cert;
}

inline ProofCertificate prove_small_a(const WeightVector& a, std::size_t desk_limit = kDeskScaleLimit) {
    if (a.n() < 3 || a[0] + a[1] > 1 || a[2] > make_rational(1, 4)) {
        throw OutOfCaseRange("small_a needs a1+a2 <= 1 and a3 <= 0.25");
    }
    ProofCertificate cert;
    cert.label = CaseLabel::SmallA;

    Rational mf = exact_from_double(mirror_failure_bound());
    cert.steps.push_back(detail::make_step("mirror_failure_tail", {}, {{"mirror_failure", mf}},
                                           "mirror_failure", "<", "2/25"));
    if (a.n() <= desk_limit) {
        Rational joint = joint_failure_probability(a, spec_top_escape(), Rational(1));
        cert.steps.push_back(detail::make_step("mirror_failure_exact", {}, {{"joint_failure", joint}},
                                               "joint_failure", "<", "2/25",
                                               "exact enumeration of the reflected pair"));
    }
    cert.lower_bound = constants::kTargetBound;  // (1 - 0.08) / 2
    cert.steps.push_back(detail::make_step("certified_bound", {}, {{"lower_bound", cert.lower_bound}},
                                           "lower_bound", ">=", fraction_string(constants::kTargetBound)));
    return cert;
}

namespace detail {

// The relaxed grid programs have at most a few hundred distinct instances, so
// per-process memoization keeps repeated certification cheap.
inline const LPSolution& solve_grid_program_cached(ProgramFamily family, const Rational& p1, const Rational& p2) {
    static std::map<std::tuple<int, std::string, std::string>, LPSolution> cache;
    static std::mutex mutex;
    auto key = std::make_tuple(family == ProgramFamily::SevenCell ? 0 : 1, fraction_string(p1), fraction_string(p2));
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    LinearProgram lp = family == ProgramFamily::SevenCell ? build_L_prime(p1, p2) : build_M_prime(p1, p2);
    LPSolution sol = solve_lp(lp);
    if (sol.status != LPStatus::Optimal) throw Infeasible("grid program did not solve");
    return cache.emplace(std::move(key), std::move(sol)).first->second;
}

}  // namespace detail

inline ProofCertificate prove_mid1(const WeightVector& a, std::size_t desk_limit = kDeskScaleLimit) {
    if (a.n() < 3 || !(make_rational(1, 4) <= a[2] && a[2] <= a[0] && a[0] <= make_rational(49, 100))) {
        throw OutOfCaseRange("mid_range_low needs 0.25 <= a3 <= a1 <= 0.49");
    }
    ProofCertificate cert;
    cert.label = CaseLabel::Mid1;

    Rational r1 = round_to_grid(a[0], grid::kStep);
    Rational r2 = round_to_grid(a[1], grid::kStep);
    Rational gap1 = boost::multiprecision::abs(a[0] - r1);
    Rational gap2 = boost::multiprecision::abs(a[1] - r2);
    cert.steps.push_back(detail::make_step("grid_round", {{"a1", a[0]}, {"a2", a[1]}},
                                           {{"a1_grid", r1}, {"a2_grid", r2}, {"round_gap", std::max(gap1, gap2)}},
                                           "round_gap", "<=", fraction_string(grid::kMargin)));

    const LPSolution& lp = detail::solve_grid_program_cached(ProgramFamily::SevenCell, r1, r2);
    cert.steps.push_back(detail::make_step("relaxed_program_cap", {{"a1_grid", r1}, {"a2_grid", r2}},
                                           {{"lp_value", lp.optimal_value}}, "lp_value", "<=",
                                           fraction_string(constants::kLpThreshold)));

    if (a.n() <= desk_limit) {
        SumDistribution tail = distribution_of(a.suffix(3));
        IntervalPartition part = build_seven_intervals(a[0], a[1]);
        PartitionProbabilities p = interval_probabilities(tail, part);
        Rational exceed = exceedance_probability(p, part);

        cert.steps.push_back(detail::make_step("cell_masses_sum", {}, {{"p_total", p.sum()}}, "p_total", "==", "1"));
        cert.steps.push_back(detail::make_step("band_345", {}, {{"p3_p4_p5", p.p[2] + p.p[3] + p.p[4]}},
                                               "p3_p4_p5", "<=", "1/2"));
        cert.steps.push_back(detail::make_step("band_456", {}, {{"p4_p5_p6", p.p[3] + p.p[4] + p.p[5]}},
                                               "p4_p5_p6", "<=", "1/2"));
        Rational smom = second_moment_lhs(p, part);
        Rational smax = 1 - a[0] * a[0] - a[1] * a[1];
        cert.steps.push_back(detail::make_step("second_moment_cap", {},
                                               {{"moment_lhs", smom}, {"moment_rhs", smax}}, "moment_lhs", "<=",
                                               "moment_rhs"));
        if (a[0] + a[1] <= grid::kIndicatorCut) {
            cert.steps.push_back(detail::make_step("first_cell_floor", {}, {{"p1", p.p[0]}}, "p1", ">=", "23/200"));
        }
        cert.steps.push_back(detail::make_step("exceedance_under_cap", {},
                                               {{"exceedance", exceed}, {"lp_value", lp.optimal_value}},
                                               "exceedance", "<=", "lp_value"));
    } else {
        cert.steps.push_back(detail::make_step("cell_mass_premises", {}, {}, "0", "<=", "0",
                                               "premise: induction; dimension beyond enumeration scale"));
    }

    cert.lower_bound = 1 - lp.optimal_value;
    cert.steps.push_back(detail::make_step("certified_bound", {}, {{"lower_bound", cert.lower_bound}},
                                           "lower_bound", ">=", fraction_string(constants::kTargetBound)));
    return cert;
}

// Big/small split of the trailing weights: a_i (i >= 2) is big when
// a1 + a_i > 1. Sorting makes the big terms a prefix of a2..an.
struct BigSmallSplit {
    std::size_t k = 1;  // largest 1-based index with a_k big; 1 when none
    std::vector<std::size_t> big_terms;
    std::vector<std::size_t> small_terms;
};

inline BigSmallSplit split_big_small(const WeightVector& a) {
    if (a[0] < make_rational(49, 100) || a[0] > make_rational(67, 100)) {
        throw OutOfCaseRange("big/small split applies to 0.49 <= a1 <= 0.67");
    }
    BigSmallSplit split;
    bool small_seen = false;
    for (std::size_t i = 2; i <= a.n(); ++i) {
        if (a[0] + a[i - 1] > 1) {
            if (small_seen) throw LemmaViolated("big terms are not a prefix");
            split.k = i;
            split.big_terms.push_back(i);
        } else {
            small_seen = true;
            split.small_terms.push_back(i);
        }
    }
    return split;
}

struct SumLemmaCheck {
    std::size_t l = 0;
    Rational prefix_value;  // a2 + ... + a_{l-1} + 2 a_l
    bool holds = false;
};

// For every 2 <= l <= k the partial sum a2+...+a_{l-1}+2*a_l stays below 2;
// also records the count bound (l-1)(1-a1)^2 <= 1-a1^2.
inline std::vector<SumLemmaCheck> check_sum_lemma(const WeightVector& a, const BigSmallSplit& split) {
    std::vector<SumLemmaCheck> checks;
    Rational prefix = 0;  // a2 + ... + a_{l-1}
    for (std::size_t l = 2; l <= split.k; ++l) {
        SumLemmaCheck c;
        c.l = l;
        c.prefix_value = prefix + 2 * a[l - 1];
        c.holds = c.prefix_value <= 2;
        if (!c.holds) {
            throw LemmaViolated("big-prefix inequality failed at l = " + std::to_string(l));
        }
        Rational count_lhs = Rational(static_cast<long long>(l - 1)) * (1 - a[0]) * (1 - a[0]);
        if (count_lhs > 1 - a[0] * a[0]) {
            throw LemmaViolated("big-term count bound failed at l = " + std::to_string(l));
        }
        checks.push_back(c);
        prefix += a[l - 1];
    }
    return checks;
}

inline ProofCertificate prove_mid2(const WeightVector& a, std::size_t desk_limit = kDeskScaleLimit) {
    if (!(make_rational(49, 100) <= a[0] && a[0] <= make_rational(67, 100))) {
        throw OutOfCaseRange("mid_range_high needs 0.49 <= a1 <= 0.67");
    }
    ProofCertificate cert;
    cert.label = CaseLabel::Mid2;

    BigSmallSplit split = split_big_small(a);
    for (const auto& c : check_sum_lemma(a, split)) {
        cert.steps.push_back(detail::make_step("big_prefix_sum", {{"l", Rational(static_cast<long long>(c.l))}},
                                               {{"prefix_plus_double", c.prefix_value}}, "prefix_plus_double",
                                               "<=", "2"));
    }

    // the largest small term is the first one past the big prefix
    std::optional<std::size_t> j;
    if (split.k < a.n() && a[split.k] >= make_rational(1, 4)) j = split.k + 1;

    if (j) {
        Rational aj = a[*j - 1];
        Rational r1 = round_to_grid(a[0], grid::kStep);
        Rational rj = round_to_grid(aj, grid::kStep);
        cert.steps.push_back(detail::make_step("grid_round", {{"a1", a[0]}, {"aj", aj}},
                                               {{"a1_grid", r1}, {"aj_grid", rj},
                                                {"round_gap", std::max(boost::multiprecision::abs(a[0] - r1),
                                                                       boost::multiprecision::abs(aj - rj))}},
                                               "round_gap", "<=", fraction_string(grid::kMargin)));
        const LPSolution& lp = detail::solve_grid_program_cached(ProgramFamily::FiveCell, r1, rj);
        cert.steps.push_back(detail::make_step("relaxed_program_cap", {{"a1_grid", r1}, {"aj_grid", rj}},
                                               {{"lp_value", lp.optimal_value}}, "lp_value", "<=",
                                               fraction_string(constants::kLpThreshold)));
        if (a.n() <= desk_limit) {
            SumDistribution tail = distribution_of(a.excluding({1, *j}));
            IntervalPartition part = build_five_intervals(a[0], aj);
            PartitionProbabilities p = interval_probabilities(tail, part);
            Rational exceed = exceedance_probability(p, part);
            cert.steps.push_back(detail::make_step("cell_masses_sum", {}, {{"p_total", p.sum()}}, "p_total", "==",
                                                   "1"));
            Rational smom = second_moment_lhs(p, part);
            Rational smax = 1 - a[0] * a[0] - aj * aj;
            cert.steps.push_back(detail::make_step("second_moment_cap", {},
                                                   {{"moment_lhs", smom}, {"moment_rhs", smax}}, "moment_lhs",
                                                   "<=", "moment_rhs"));
            cert.steps.push_back(detail::make_step("exceedance_under_cap", {},
                                                   {{"exceedance", exceed}, {"lp_value", lp.optimal_value}},
                                                   "exceedance", "<=", "lp_value"));
        }
        cert.lower_bound = 1 - lp.optimal_value;
    } else {
        cert.steps.push_back(detail::make_step(
            "no_small_quarter_term", {{"a1", a[0]}},
            {{"largest_small", split.k < a.n() ? a[split.k] : Rational(0)}}, "largest_small", "<", "1/4",
            "all remaining small terms fall below 0.25, reverse-ladder mirroring applies"));
        if (a.n() <= desk_limit) {
            bool escape = check_escape_implication(a, spec_reverse_ladder(a));
            cert.steps.push_back(detail::make_step("escape_dichotomy_reverse", {},
                                                   {{"holds", Rational(escape ? 1 : 0)}}, "holds", "==", "1",
                                                   "pathwise check over all sign patterns"));
            Rational joint = joint_failure_probability(a, spec_reverse_ladder(a), Rational(1));
            cert.steps.push_back(detail::make_step("mirror_failure_exact", {}, {{"joint_failure", joint}},
                                                   "joint_failure", "<", "2/25"));
        }
        Rational mf = exact_from_double(mirror_failure_bound());
        cert.steps.push_back(detail::make_step("mirror_failure_tail", {}, {{"mirror_failure", mf}},
                                               "mirror_failure", "<", "2/25"));
        cert.lower_bound = constants::kTargetBound;
    }
    cert.steps.push_back(detail::make_step("certified_bound", {}, {{"lower_bound", cert.lower_bound}},
                                           "lower_bound", ">=", fraction_string(constants::kTargetBound)));
    return cert;
}

// Dispatcher: classify, run the matching argument chain, then (at desk scale)
// compare the certified bound against the exact probability.
inline ProofCertificate certified_lower_bound(const WeightVector& a, std::size_t desk_limit = kDeskScaleLimit,
                                              std::size_t soundness_limit = kSoundnessLimit) {
    ProofCertificate cert;
    switch (classify(a)) {
        case CaseLabel::BaseSmallN: cert = prove_base(a); break;
        case CaseLabel::BigA1: cert = prove_big_a1(a); break;
        case CaseLabel::SmallA: cert = prove_small_a(a, desk_limit); break;
        case CaseLabel::Mid1: cert = prove_mid1(a, desk_limit); break;
        case CaseLabel::Mid2: cert = prove_mid2(a, desk_limit); break;
    }
    if (a.n() <= soundness_limit) {
        Rational exact = prob_abs_within(a, Rational(1));
        cert.exact_probability = exact;
        cert.sound = cert.lower_bound <= exact ? Soundness::Sound : Soundness::Unsound;
    }
    return cert;
}

}  // namespace rsum
