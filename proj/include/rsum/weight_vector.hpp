#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rsum/errors.hpp"
#include "rsum/rational.hpp"

namespace rsum {

namespace detail {

// Maps an arbitrary positive rational vector onto the unit sphere, exactly.
// Uses the inverse stereographic chart through the coordinate of smallest
// magnitude: the output is always an exact rational unit vector, and it
// coincides with the input whenever the input already has unit norm. For
// near-unit inputs the perturbation is of the order of |sum of squares - 1|.
inline std::vector<Rational> project_to_unit_sphere(std::vector<Rational> q) {
    if (q.empty()) throw EmptyVector();
    if (q.size() == 1) return {Rational(1)};
    if (sum_of_squares(q) == 1) return q;

    std::size_t pole = 0;
    for (std::size_t i = 1; i < q.size(); ++i) {
        if (boost::multiprecision::abs(q[i]) < boost::multiprecision::abs(q[pole])) pole = i;
    }
    Rational one_minus = 1 - q[pole];
    if (one_minus == 0) throw InvalidParameters("cannot renormalize: pole coordinate equals 1");

    // chart coordinates p_i = q_i / (1 - q_pole), then map back to the sphere
    Rational p_sq = 0;
    std::vector<Rational> p(q.size(), Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i == pole) continue;
        p[i] = q[i] / one_minus;
        p_sq += p[i] * p[i];
    }
    Rational denom_term = 1 + p_sq;
    std::vector<Rational> u(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        u[i] = i == pole ? Rational((p_sq - 1) / denom_term) : Rational(2 * p[i] / denom_term);
    }
    return u;
}

}  // namespace detail

// Sorted positive rational weights with an exactly unit sum of squares.
class WeightVector {
public:
    // Certificate mode: the squared sum must equal 1 exactly.
    static WeightVector from_rationals(std::vector<Rational> raw) {
        std::vector<Rational> w = clean(std::move(raw));
        Rational ss = sum_of_squares(w);
        if (ss != 1) {
            throw NotUnitNorm("sum of squares is " + fraction_string(ss) + ", expected 1");
        }
        return WeightVector(std::move(w), false);
    }

    // Float-ingest mode: values are converted to exact rationals, required to
    // be within 1e-12 of unit norm, then renormalized exactly. The result is
    // flagged so downstream output can report the renormalization.
    static WeightVector from_doubles(const std::vector<double>& raw) {
        std::vector<Rational> q;
        q.reserve(raw.size());
        for (double x : raw) q.push_back(exact_from_double(x));
        return ingest(std::move(q));
    }

    static WeightVector ingest(std::vector<Rational> raw) {
        std::vector<Rational> w = clean(std::move(raw));
        Rational ss = sum_of_squares(w);
        Rational tol = make_rational(1, 1000000000000LL);
        if (boost::multiprecision::abs(ss - 1) > tol) {
            throw NotUnitNorm("sum of squares " + decimal_string(ss) + " differs from 1 by more than 1e-12");
        }
        std::vector<Rational> u = detail::project_to_unit_sphere(std::move(w));
        for (auto& x : u) x = boost::multiprecision::abs(x);
        u.erase(std::remove(u.begin(), u.end(), Rational(0)), u.end());
        std::sort(u.begin(), u.end(), std::greater<>());
        if (u.empty()) throw EmptyVector();
        return WeightVector(std::move(u), true);
    }

    std::size_t n() const { return w_.size(); }
    const Rational& operator[](std::size_t i) const { return w_[i]; }  // 0-based
    const std::vector<Rational>& weights() const { return w_; }
    bool renormalized() const { return renormalized_; }

    Rational second_moment() const { return sum_of_squares(w_); }

    // Sum of squares of a_{from}..a_n in 1-based indexing.
    Rational suffix_second_moment(std::size_t from_1based) const {
        Rational s = 0;
        for (std::size_t i = from_1based; i <= w_.size(); ++i) s += w_[i - 1] * w_[i - 1];
        return s;
    }

    std::vector<Rational> suffix(std::size_t from_1based) const {
        if (from_1based < 1 || from_1based > w_.size() + 1) throw InvalidParameters("bad suffix index");
        return std::vector<Rational>(w_.begin() + static_cast<std::ptrdiff_t>(from_1based - 1), w_.end());
    }

    // All weights except the 1-based indices listed (used for residual sums).
    std::vector<Rational> excluding(std::vector<std::size_t> drop_1based) const {
        std::vector<Rational> out;
        out.reserve(w_.size());
        for (std::size_t i = 1; i <= w_.size(); ++i) {
            if (std::find(drop_1based.begin(), drop_1based.end(), i) == drop_1based.end()) {
                out.push_back(w_[i - 1]);
            }
        }
        return out;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (i) s += ",";
            s += fraction_string(w_[i]);
        }
        return s + ")";
    }

private:
    WeightVector(std::vector<Rational> w, bool renorm) : w_(std::move(w)), renormalized_(renorm) {}

    static std::vector<Rational> clean(std::vector<Rational> raw) {
        if (raw.empty()) throw EmptyVector();
        for (const auto& x : raw) {
            if (x < 0) throw NegativeWeight("negative weight " + fraction_string(x));
        }
        raw.erase(std::remove(raw.begin(), raw.end(), Rational(0)), raw.end());
        if (raw.empty()) throw EmptyVector("all weights are zero");
        std::sort(raw.begin(), raw.end(), std::greater<>());
        return raw;
    }

    std::vector<Rational> w_;
    bool renormalized_ = false;
};

inline WeightVector make_weight_vector(std::vector<Rational> raw) {
    return WeightVector::from_rationals(std::move(raw));
}

}  // namespace rsum
