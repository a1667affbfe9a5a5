#pragma once

#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "rsum/programs.hpp"

namespace rsum {

struct GridPoint {
    Rational a1p;
    Rational a2p;  // aj' for the five-cell family
    Rational value;
    std::vector<Rational> argmax;
    bool below_threshold = false;
};

struct SweepReport {
    ProgramFamily family;
    Rational margin_e;
    Rational threshold;
    std::vector<GridPoint> grid_points;
    Rational max_value;
    Rational max_a1p, max_a2p;
    bool all_below = false;
};

namespace detail {

inline SweepReport run_sweep(ProgramFamily family, const Rational& e, const Rational& step, unsigned threads) {
    std::vector<std::pair<Rational, Rational>> params;
    if (family == ProgramFamily::SevenCell) {
        for (Rational a1 = grid::kMid1Low; a1 <= grid::kMid1High; a1 += step) {
            for (Rational a2 = grid::kMid1Low; a2 <= a1; a2 += step) params.emplace_back(a1, a2);
        }
    } else {
        for (Rational a1 = grid::kMid2Low; a1 <= grid::kMid2High; a1 += step) {
            Rational cap = std::min(Rational(1 + step - a1), a1);
            for (Rational aj = grid::kMid1Low; aj <= cap; aj += step) params.emplace_back(a1, aj);
        }
    }

    SweepReport report;
    report.family = family;
    report.margin_e = e;
    report.threshold = constants::kLpThreshold;
    report.grid_points.resize(params.size());

    auto solve_point = [&](std::size_t i) {
        const auto& [p1, p2] = params[i];
        LinearProgram lp = family == ProgramFamily::SevenCell ? build_L_prime(p1, p2, e, step)
                                                              : build_M_prime(p1, p2, e, step);
        LPSolution sol = solve_lp(lp);
        if (sol.status == LPStatus::Infeasible) throw Infeasible("grid point " + fraction_string(p1));
        if (sol.status == LPStatus::Unbounded) throw Unbounded("grid point " + fraction_string(p1));
        GridPoint& g = report.grid_points[i];
        g.a1p = p1;
        g.a2p = p2;
        g.value = sol.optimal_value;
        g.argmax = sol.vertex;
        g.below_threshold = sol.optimal_value <= report.threshold;
    };

    if (threads <= 1 || params.size() < 2) {
        for (std::size_t i = 0; i < params.size(); ++i) solve_point(i);
    } else {
        // workers stride over indices; results land in preallocated slots, so
        // the merged report does not depend on scheduling
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < params.size(); i += threads) solve_point(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    report.all_below = true;
    bool first = true;
    for (const auto& g : report.grid_points) {
        if (!g.below_threshold) report.all_below = false;
        if (first || g.value > report.max_value) {
            first = false;
            report.max_value = g.value;
            report.max_a1p = g.a1p;
            report.max_a2p = g.a2p;
        }
    }
    return report;
}

}  // namespace detail

inline SweepReport sweep_L_prime(const Rational& e = grid::kMargin, const Rational& step = grid::kStep,
                                 unsigned threads = std::thread::hardware_concurrency()) {
    return detail::run_sweep(ProgramFamily::SevenCell, e, step, threads);
}

inline SweepReport sweep_M_prime(const Rational& e = grid::kMargin, const Rational& step = grid::kStep,
                                 unsigned threads = std::thread::hardware_concurrency()) {
    return detail::run_sweep(ProgramFamily::FiveCell, e, step, threads);
}

// One row per grid point, exact fraction plus 12-digit decimal.
inline void write_sweep_csv(const SweepReport& report, std::ostream& os) {
    const std::size_t nx = report.family == ProgramFamily::SevenCell ? 7 : 5;
    os << "a1p," << (report.family == ProgramFamily::SevenCell ? "a2p" : "ajp")
       << ",value_fraction,value_decimal";
    for (std::size_t i = 1; i <= nx; ++i) os << ",x" << i;
    os << ",below_threshold\n";
    for (const auto& g : report.grid_points) {
        os << fraction_string(g.a1p) << "," << fraction_string(g.a2p) << "," << fraction_string(g.value) << ","
           << decimal_string(g.value);
        for (const auto& x : g.argmax) os << "," << fraction_string(x);
        os << "," << (g.below_threshold ? "true" : "false") << "\n";
    }
}

}  // namespace rsum
