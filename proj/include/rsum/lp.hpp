#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rsum/errors.hpp"
#include "rsum/rational.hpp"

namespace rsum {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

// maximize objective . x subject to the constraints and per-variable
// nonnegativity flags.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<Constraint> constraints;
    std::vector<bool> nonneg;
    std::size_t variable_count = 0;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    Rational optimal_value;
    std::vector<Rational> vertex;
    std::vector<std::size_t> active_set;  // indices of tight constraints
};

namespace detail {

struct Row {
    std::vector<Rational> a;
    Rational b;
};

// Normal form with every variable nonnegative.
struct NonnegProgram {
    std::size_t vars = 0;
    std::vector<Rational> objective;
    std::vector<Row> eq;
    std::vector<Row> le;
};

// Row-reduce the equality block. Returns an independent basis, or nullopt if
// the equalities alone are inconsistent.
inline std::optional<std::vector<Row>> independent_equalities(const std::vector<Row>& eq, std::size_t vars) {
    std::vector<Row> rows = eq;
    std::vector<Row> basis;
    std::vector<std::size_t> pivot_cols;
    for (auto& r : rows) {
        // eliminate against existing basis
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const Rational& lead = r.a[pivot_cols[k]];
            if (lead != 0) {
                Rational f = lead / basis[k].a[pivot_cols[k]];
                for (std::size_t j = 0; j < vars; ++j) r.a[j] -= f * basis[k].a[j];
                r.b -= f * basis[k].b;
            }
        }
        std::size_t piv = vars;
        for (std::size_t j = 0; j < vars; ++j) {
            if (r.a[j] != 0) {
                piv = j;
                break;
            }
        }
        if (piv == vars) {
            if (r.b != 0) return std::nullopt;  // 0 = nonzero
            continue;                           // redundant
        }
        basis.push_back(r);
        pivot_cols.push_back(piv);
    }
    return basis;
}

// Solves the square rational system M x = rhs; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                         std::vector<Rational> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r) {
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == n) return std::nullopt;
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        Rational inv = m[col][col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col] / inv;
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

// A row with all-positive coefficients caps every variable of a nonnegative
// program, so the recession cone is trivially {0}.
inline bool structurally_bounded(const NonnegProgram& p) {
    auto all_positive = [&](const Row& r) {
        for (const auto& c : r.a) {
            if (c <= 0) return false;
        }
        return true;
    };
    for (const auto& r : p.eq) {
        if (all_positive(r)) return true;
    }
    for (const auto& r : p.le) {
        if (all_positive(r)) return true;
    }
    return false;
}

struct NonnegSolution {
    LPStatus status = LPStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

// Exhaustive vertex enumeration: every vertex has a tight independent active
// set that contains a basis of the equality rows plus variable_count-rank
// facets/inequalities, so enumerating those subsets visits every vertex.
inline NonnegSolution solve_nonneg(const NonnegProgram& p, bool check_unbounded);

inline NonnegSolution recession_improves(const NonnegProgram& p) {
    NonnegProgram cone;
    cone.vars = p.vars;
    cone.objective = p.objective;
    for (const auto& r : p.eq) cone.eq.push_back({r.a, Rational(0)});
    for (const auto& r : p.le) cone.le.push_back({r.a, Rational(0)});
    cone.eq.push_back({std::vector<Rational>(p.vars, Rational(1)), Rational(1)});  // normalize rays
    return solve_nonneg(cone, /*check_unbounded=*/false);
}

inline NonnegSolution solve_nonneg(const NonnegProgram& p, bool check_unbounded) {
    NonnegSolution out;
    auto basis_opt = independent_equalities(p.eq, p.vars);
    if (!basis_opt) return out;  // inconsistent equalities
    const std::vector<Row>& eq_basis = *basis_opt;
    if (eq_basis.size() > p.vars) return out;

    const std::size_t pick = p.vars - eq_basis.size();
    // hyperplane ids: [0, le.size()) inequalities, then one facet per variable
    const std::size_t hyperplanes = p.le.size() + p.vars;
    if (pick > hyperplanes) return out;

    std::vector<std::size_t> comb(pick);
    for (std::size_t i = 0; i < pick; ++i) comb[i] = i;

    bool found = false;
    Rational best_value;
    std::vector<Rational> best_x;

    std::vector<char> pinned(p.vars);
    std::vector<std::size_t> free_vars;
    auto try_active_set = [&](const std::vector<std::size_t>& chosen) {
        std::fill(pinned.begin(), pinned.end(), 0);
        std::vector<const Row*> general;
        for (std::size_t id : chosen) {
            if (id < p.le.size()) {
                general.push_back(&p.le[id]);
            } else {
                pinned[id - p.le.size()] = 1;
            }
        }
        free_vars.clear();
        for (std::size_t j = 0; j < p.vars; ++j) {
            if (!pinned[j]) free_vars.push_back(j);
        }
        const std::size_t dim = free_vars.size();
        if (dim != eq_basis.size() + general.size()) return;  // cannot happen, kept as a guard

        std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim));
        std::vector<Rational> rhs(dim);
        std::size_t row = 0;
        auto add_row = [&](const Row& r) {
            for (std::size_t j = 0; j < dim; ++j) m[row][j] = r.a[free_vars[j]];
            rhs[row] = r.b;
            ++row;
        };
        for (const auto& r : eq_basis) add_row(r);
        for (const Row* r : general) add_row(*r);

        auto sol = solve_square(std::move(m), std::move(rhs));
        if (!sol) return;

        std::vector<Rational> x(p.vars, Rational(0));
        for (std::size_t j = 0; j < dim; ++j) x[free_vars[j]] = (*sol)[j];

        for (const auto& xi : x) {
            if (xi < 0) return;
        }
        for (const auto& r : p.le) {
            Rational v = 0;
            for (std::size_t j = 0; j < p.vars; ++j) v += r.a[j] * x[j];
            if (v > r.b) return;
        }
        for (const auto& r : p.eq) {
            Rational v = 0;
            for (std::size_t j = 0; j < p.vars; ++j) v += r.a[j] * x[j];
            if (v != r.b) return;
        }
        Rational value = 0;
        for (std::size_t j = 0; j < p.vars; ++j) value += p.objective[j] * x[j];
        if (!found || value > best_value ||
            (value == best_value && std::lexicographical_compare(x.begin(), x.end(), best_x.begin(), best_x.end()))) {
            found = true;
            best_value = value;
            best_x = x;
        }
    };

    if (pick == 0) {
        try_active_set({});
    } else {
        for (;;) {
            try_active_set(comb);
            // next combination
            std::size_t i = pick;
            while (i > 0 && comb[i - 1] == hyperplanes - pick + (i - 1)) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < pick; ++j) comb[j] = comb[j - 1] + 1;
        }
    }

    if (!found) return out;  // pointed nonnegative program: no vertex means empty

    if (check_unbounded && !structurally_bounded(p)) {
        NonnegSolution ray = recession_improves(p);
        if (ray.status == LPStatus::Optimal && ray.value > 0) {
            out.status = LPStatus::Unbounded;
            return out;
        }
    }
    out.status = LPStatus::Optimal;
    out.value = best_value;
    out.x = std::move(best_x);
    return out;
}

}  // namespace detail

// Exact optimum by exhaustive vertex enumeration. Free variables are split
// into nonnegative pairs first, so the search space is always pointed.
inline LPSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.variable_count;
    if (n == 0 || n > 12) throw InvalidParameters("variable_count must be in 1..12");
    if (lp.objective.size() != n || lp.nonneg.size() != n) throw InvalidParameters("objective/nonneg size mismatch");
    for (const auto& c : lp.constraints) {
        if (c.coeffs.size() != n) throw InvalidParameters("constraint width mismatch");
    }

    // lift x_i = x+ - x- for variables without a nonnegativity flag
    std::vector<std::size_t> twin(n, SIZE_MAX);
    std::size_t vars = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!lp.nonneg[i]) twin[i] = vars++;
    }
    detail::NonnegProgram p;
    p.vars = vars;
    p.objective.assign(vars, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        p.objective[i] = lp.objective[i];
        if (twin[i] != SIZE_MAX) p.objective[twin[i]] = -lp.objective[i];
    }
    auto lift = [&](const std::vector<Rational>& coeffs, bool negate) {
        std::vector<Rational> a(vars, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            Rational c = negate ? Rational(-coeffs[i]) : coeffs[i];
            a[i] = c;
            if (twin[i] != SIZE_MAX) a[twin[i]] = -c;
        }
        return a;
    };
    for (const auto& c : lp.constraints) {
        switch (c.relation) {
            case Relation::Equal:
                p.eq.push_back({lift(c.coeffs, false), c.rhs});
                break;
            case Relation::LessEq:
                p.le.push_back({lift(c.coeffs, false), c.rhs});
                break;
            case Relation::GreaterEq:
                p.le.push_back({lift(c.coeffs, true), Rational(-c.rhs)});
                break;
        }
    }

    detail::NonnegSolution inner = detail::solve_nonneg(p, /*check_unbounded=*/true);
    LPSolution sol;
    sol.status = inner.status;
    if (inner.status != LPStatus::Optimal) return sol;

    sol.optimal_value = inner.value;
    sol.vertex.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.vertex[i] = inner.x[i];
        if (twin[i] != SIZE_MAX) sol.vertex[i] -= inner.x[twin[i]];
    }
    for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
        const auto& c = lp.constraints[k];
        Rational v = 0;
        for (std::size_t i = 0; i < n; ++i) v += c.coeffs[i] * sol.vertex[i];
        if (v == c.rhs) sol.active_set.push_back(k);
    }
    return sol;
}

}  // namespace rsum
