#pragma once

#include <cmath>

#include "rsum/errors.hpp"
#include "rsum/rational.hpp"

namespace rsum {

// Fixed numeric constants of the tail-bound arguments, kept in one table so
// every threshold used by the provers is auditable in a single place. The
// rational twins are exact decimals.
namespace constants {

// Gaussian domination factor for Rademacher sums (Bentkus-Dzindzalieta):
// P(sum >= x) <= kBdFactor * P(N(0,1) >= x) for any sub-unit weight vector.
inline constexpr double kBdFactor = 3.18;
inline const Rational kBdFactorExact = make_rational(159, 50);

// Escape level of the mirroring dichotomies: two crossings force one of the
// two terminals beyond this value.
inline constexpr double kEscapeLevel = 2.5;
inline const Rational kEscapeLevelExact = make_rational(5, 2);

// Normalized deviation floor used by the dominant-weight case.
inline constexpr double kBigA1TailPoint = 2.24;
inline const Rational kBigA1TailPointExact = make_rational(56, 25);

// Ceiling for the joint mirror-failure probability.
inline const Rational kFailureThreshold = make_rational(2, 25);  // 0.08

// Certified probability floor of the whole case analysis.
inline const Rational kTargetBound = make_rational(23, 50);  // 0.46

// Cap of every grid-swept relaxed program.
inline const Rational kLpThreshold = make_rational(27, 50);  // 0.54

// Two-sided tail complement at kBigA1TailPoint, bracketing 0.9202.
inline const Rational kTwoSidedFloor = make_rational(4600, 5000);   // 0.9200
inline const Rational kTwoSidedCeil = make_rational(4604, 5000);    // 0.9204

}  // namespace constants

// Upper-tail value with a one-sided error budget: upper_bound is a guaranteed
// overestimate of the true Q(x) = P(N(0,1) >= x).
struct TailValue {
    double point_estimate = 0;
    double upper_bound = 0;
    double error_budget = 0;
};

// Q(x) to absolute error well below 1e-9; the budget absorbs the libm error
// of erfc by many orders of magnitude.
inline TailValue normal_upper_tail(double x) {
    if (!std::isfinite(x)) throw InvalidParameters("normal_upper_tail expects finite x");
    TailValue t;
    t.point_estimate = 0.5 * std::erfc(x / std::sqrt(2.0));
    if (t.point_estimate < 0) t.point_estimate = 0;
    if (t.point_estimate > 1) t.point_estimate = 1;
    t.error_budget = 1e-12;
    t.upper_bound = t.point_estimate + t.error_budget;
    if (t.upper_bound > 1) t.upper_bound = 1;
    return t;
}

// 3.18 * Q(x) as a safe overestimate: a valid upper bound on P(sum >= x) for
// any weight vector with sum of squares at most 1.
inline double bd_tail_bound(double x) {
    return constants::kBdFactor * normal_upper_tail(x).upper_bound;
}

// Upper bound on P(|X| > 2.5 or |Y| > 2.5) for two equal-law signed sums:
// union bound and symmetry give 2 * 2 * 3.18 * Q(2.5). The extra_budget is an
// absolute slack added to the final value (used to probe the margin).
// Throws BoundViolated if the result is not below 0.08, which would indicate
// a broken tail implementation.
inline double mirror_failure_bound(double extra_budget = 0.0) {
    double value = 4.0 * bd_tail_bound(constants::kEscapeLevel) + extra_budget;
    if (!(exact_from_double(value) < constants::kFailureThreshold)) {
        throw BoundViolated("mirror failure bound " + decimal_string(exact_from_double(value)) +
                            " is not below 0.08");
    }
    return value;
}

}  // namespace rsum
