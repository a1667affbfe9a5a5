#pragma once

#include <string>
#include <vector>

#include "rsum/errors.hpp"
#include "rsum/lp.hpp"
#include "rsum/rational.hpp"
#include "rsum/tail_bounds.hpp"

namespace rsum {

namespace grid {
inline const Rational kStep = make_rational(1, 100);
inline const Rational kMargin = make_rational(1, 200);  // e = step / 2
inline const Rational kIndicatorCut = make_rational(133, 200);   // 0.665
inline const Rational kIndicatorFloor = make_rational(23, 200);  // 0.115
inline const Rational kMid1Low = make_rational(1, 4);
inline const Rational kMid1High = make_rational(49, 100);
inline const Rational kMid2Low = make_rational(49, 100);
inline const Rational kMid2High = make_rational(67, 100);
}  // namespace grid

namespace detail {

inline LinearProgram seven_cell_program(const std::vector<Rational>& cell_coeffs, const Rational& rhs,
                                        bool indicator) {
    LinearProgram lp;
    lp.variable_count = 7;
    lp.objective = {0,           make_rational(1, 4), make_rational(1, 2), make_rational(3, 4),
                    Rational(1), Rational(1),         Rational(1)};
    lp.nonneg.assign(7, true);
    lp.constraints.push_back({std::vector<Rational>(7, Rational(1)), Relation::Equal, Rational(1)});
    lp.constraints.push_back({{0, 0, 1, 1, 1, 0, 0}, Relation::LessEq, make_rational(1, 2)});
    lp.constraints.push_back({{0, 0, 0, 1, 1, 1, 0}, Relation::LessEq, make_rational(1, 2)});
    std::vector<Rational> mom(7, Rational(0));
    for (std::size_t i = 0; i < 6; ++i) mom[i + 1] = cell_coeffs[i] * cell_coeffs[i];
    lp.constraints.push_back({mom, Relation::LessEq, rhs});
    if (indicator) {
        std::vector<Rational> e1(7, Rational(0));
        e1[0] = 1;
        lp.constraints.push_back({e1, Relation::GreaterEq, grid::kIndicatorFloor});
    }
    return lp;
}

inline LinearProgram five_cell_program(const std::vector<Rational>& cell_coeffs, const Rational& rhs) {
    LinearProgram lp;
    lp.variable_count = 5;
    lp.objective = {0, make_rational(1, 4), make_rational(1, 2), make_rational(3, 4), Rational(1)};
    lp.nonneg.assign(5, true);
    lp.constraints.push_back({std::vector<Rational>(5, Rational(1)), Relation::Equal, Rational(1)});
    std::vector<Rational> mom(5, Rational(0));
    for (std::size_t i = 0; i < 4; ++i) mom[i + 1] = cell_coeffs[i] * cell_coeffs[i];
    lp.constraints.push_back({mom, Relation::LessEq, rhs});
    return lp;
}

inline void require_grid_multiple(const Rational& v, const Rational& step, const char* name) {
    if (!is_multiple_of(v, step)) {
        throw InvalidParameters(std::string(name) + " = " + fraction_string(v) + " is not a multiple of " +
                                fraction_string(step));
    }
}

}  // namespace detail

// Exact-parameter seven-cell program over 0.25 <= a2 <= a1 <= 0.49. The
// x1 floor row is resolved at build time from the exact indicator condition.
inline LinearProgram build_L(const Rational& a1, const Rational& a2) {
    if (!(grid::kMid1Low <= a2 && a2 <= a1 && a1 <= grid::kMid1High)) {
        throw InvalidParameters("build_L needs 0.25 <= a2 <= a1 <= 0.49");
    }
    std::vector<Rational> cells = {1 - a1 - a2, 1 - a1 + a2,         1 + a1 - a2,
                                   1 + a1 + a2, 3 - 3 * a1 + a2,     3 + 3 * a1 - 5 * a2};
    return detail::seven_cell_program(cells, 1 - a1 * a1 - a2 * a2, a1 + a2 <= grid::kIndicatorCut);
}

// Grid-relaxed seven-cell program at hundredth parameters with margin e.
inline LinearProgram build_L_prime(const Rational& a1p, const Rational& a2p, const Rational& e = grid::kMargin,
                                   const Rational& step = grid::kStep) {
    if (!(grid::kMid1Low <= a2p && a2p <= a1p && a1p <= grid::kMid1High)) {
        throw InvalidParameters("build_L_prime needs 0.25 <= a2' <= a1' <= 0.49");
    }
    detail::require_grid_multiple(a1p, step, "a1'");
    detail::require_grid_multiple(a2p, step, "a2'");
    std::vector<Rational> cells = {1 - a1p - a2p - 2 * e, 1 - a1p + a2p - 2 * e,
                                   1 + a1p - a2p - 2 * e, 1 + a1p + a2p - 2 * e,
                                   3 - 3 * a1p + a2p - 4 * e, 3 + 3 * a1p - 5 * a2p - 8 * e};
    Rational rhs = 1 - (a1p - e) * (a1p - e) - (a2p - e) * (a2p - e);
    return detail::seven_cell_program(cells, rhs, a1p + a2p + 2 * e <= grid::kIndicatorCut);
}

// Exact-parameter five-cell program over 0.49 <= a1 <= 0.67,
// 0.25 <= aj <= min(1 - a1, a1).
inline LinearProgram build_M(const Rational& a1, const Rational& aj) {
    Rational cap = std::min(Rational(1 - a1), a1);
    if (!(grid::kMid2Low <= a1 && a1 <= grid::kMid2High && grid::kMid1Low <= aj && aj <= cap)) {
        throw InvalidParameters("build_M needs 0.49 <= a1 <= 0.67 and 0.25 <= aj <= min(1-a1, a1)");
    }
    std::vector<Rational> cells = {1 - a1 - aj, 1 - a1 + aj, 1 + a1 - aj, 1 + a1 + aj};
    return detail::five_cell_program(cells, 1 - a1 * a1 - aj * aj);
}

// Grid-relaxed five-cell program; the first cell coefficient is clamped to
// zero when 1 - a1' - aj' - 2e goes negative, and the zero column is kept.
inline LinearProgram build_M_prime(const Rational& a1p, const Rational& ajp, const Rational& e = grid::kMargin,
                                   const Rational& step = grid::kStep) {
    Rational cap = std::min(Rational(1 + step - a1p), a1p);
    if (!(grid::kMid2Low <= a1p && a1p <= grid::kMid2High && grid::kMid1Low <= ajp && ajp <= cap)) {
        throw InvalidParameters("build_M_prime needs 0.49 <= a1' <= 0.67 and 0.25 <= aj' <= min(1.01-a1', a1')");
    }
    detail::require_grid_multiple(a1p, step, "a1'");
    detail::require_grid_multiple(ajp, step, "aj'");
    Rational g = 1 - a1p - ajp - 2 * e;
    if (g <= 0) g = 0;
    std::vector<Rational> cells = {g, 1 - a1p + ajp - 2 * e, 1 + a1p - ajp - 2 * e, 1 + a1p + ajp - 2 * e};
    Rational rhs = 1 - (a1p - e) * (a1p - e) - (ajp - e) * (ajp - e);
    return detail::five_cell_program(cells, rhs);
}

enum class ProgramFamily { SevenCell, FiveCell };

struct DominationReport {
    ProgramFamily family;
    Rational exact_a1, exact_a2;
    Rational rounded_a1, rounded_a2;
    Rational exact_value, relaxed_value;
    bool holds = false;
};

// Rounds the exact parameters to the grid, solves both programs and checks
// that the relaxed optimum dominates the exact one.
inline DominationReport check_rounding_domination(const Rational& a1, const Rational& a2,
                                                  ProgramFamily family = ProgramFamily::SevenCell,
                                                  const Rational& e = grid::kMargin) {
    DominationReport rep;
    rep.family = family;
    rep.exact_a1 = a1;
    rep.exact_a2 = a2;
    rep.rounded_a1 = round_to_grid(a1, grid::kStep);
    rep.rounded_a2 = round_to_grid(a2, grid::kStep);

    LPSolution exact, relaxed;
    if (family == ProgramFamily::SevenCell) {
        exact = solve_lp(build_L(a1, a2));
        relaxed = solve_lp(build_L_prime(rep.rounded_a1, rep.rounded_a2, e));
    } else {
        exact = solve_lp(build_M(a1, a2));
        relaxed = solve_lp(build_M_prime(rep.rounded_a1, rep.rounded_a2, e));
    }
    if (exact.status != LPStatus::Optimal || relaxed.status != LPStatus::Optimal) {
        throw DominationViolated("expected both programs to be solvable");
    }
    rep.exact_value = exact.optimal_value;
    rep.relaxed_value = relaxed.optimal_value;
    rep.holds = rep.relaxed_value >= rep.exact_value;
    if (!rep.holds) {
        throw DominationViolated("relaxed optimum " + fraction_string(rep.relaxed_value) +
                                 " is below exact optimum " + fraction_string(rep.exact_value));
    }
    return rep;
}

}  // namespace rsum
