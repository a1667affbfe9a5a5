#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rsum/errors.hpp"
#include "rsum/rational.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

// Deterministic helpers on top of mt19937_64. The standard distributions are
// not bit-reproducible across library implementations, so reductions are done
// by hand.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    std::size_t below(std::size_t k) { return static_cast<std::size_t>(gen_() % k); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 gen_;
};

namespace detail {

// Rounds a positive double profile to rationals on a random grid, then maps
// it exactly onto the unit sphere. The exact output stays within roughly
// 1/scale of the profile, so callers leave that much margin to their range
// constraints and retry on the (rare) miss.
inline std::vector<Rational> rational_unit_near(const std::vector<double>& profile, Rng& rng) {
    double norm2 = 0;
    for (double p : profile) norm2 += p * p;
    double norm = std::sqrt(norm2);
    const long long scale = static_cast<long long>(rng.between(900, 2500));
    std::vector<Rational> q;
    q.reserve(profile.size());
    for (double p : profile) {
        long long k = static_cast<long long>(std::llround(p / norm * static_cast<double>(scale)));
        if (k < 1) k = 1;
        q.emplace_back(make_rational(k, scale));
    }
    std::vector<Rational> u = project_to_unit_sphere(q);
    for (auto& x : u) x = boost::multiprecision::abs(x);
    u.erase(std::remove(u.begin(), u.end(), Rational(0)), u.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    return u;
}

}  // namespace detail

struct VectorProfile {
    std::vector<double> targets;
};

// Generic rational unit vector with n <= max_n. Mixes flat, decaying and
// top-heavy shapes.
inline WeightVector random_unit_vector(Rng& rng, std::size_t max_n) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::size_t n = rng.between(1, max_n);
        std::vector<double> t(n);
        int style = static_cast<int>(rng.below(3));
        for (std::size_t i = 0; i < n; ++i) {
            double u = rng.range(0.05, 1.0);
            if (style == 1) u = u / static_cast<double>(i + 1);  // decaying
            if (style == 2 && i == 0) u = 3.0;                   // dominant top
            t[i] = u;
        }
        std::vector<Rational> w = detail::rational_unit_near(t, rng);
        if (w.empty() || w.size() > max_n) continue;
        try {
            return WeightVector::from_rationals(w);
        } catch (const Error&) {
            continue;
        }
    }
    throw InvalidParameters("random_unit_vector: generation failed");
}

namespace detail {

// Fills the remaining squared mass with m roughly equal entries below `cap`.
inline bool append_filler(std::vector<double>& t, double residual, double cap, std::size_t max_n, Rng& rng) {
    if (residual <= 1e-9) return true;
    double v = std::min(cap, rng.range(0.6 * cap, cap));
    std::size_t m = static_cast<std::size_t>(std::ceil(residual / (v * v)));
    if (m == 0) m = 1;
    if (t.size() + m > max_n) return false;
    double each = std::sqrt(residual / static_cast<double>(m));
    if (each > cap) return false;
    for (std::size_t i = 0; i < m; ++i) t.push_back(each);
    return true;
}

inline WeightVector build_from_profile(const std::vector<double>& t, Rng& rng) {
    std::vector<Rational> w = rational_unit_near(t, rng);
    return WeightVector::from_rationals(w);
}

}  // namespace detail

// 0.25 <= a3 <= a1 <= 0.49 (the seven-cell range), exact conditions verified.
inline WeightVector random_mid1_vector(Rng& rng, std::size_t max_n = 14) {
    const Rational lo = make_rational(1, 4), hi = make_rational(49, 100);
    for (int attempt = 0; attempt < 600; ++attempt) {
        double a1 = rng.range(0.27, 0.47);
        double a2 = rng.range(0.265, a1);
        double a3 = rng.range(0.262, a2);
        std::vector<double> t = {a1, a2, a3};
        double residual = 1.0 - a1 * a1 - a2 * a2 - a3 * a3;
        if (residual < -1e-12) continue;
        if (!detail::append_filler(t, residual, std::min(a3 - 0.012, 0.245), max_n, rng)) continue;
        try {
            WeightVector w = detail::build_from_profile(t, rng);
            if (w.n() <= max_n && w.n() >= 3 && lo <= w[2] && w[2] <= w[0] && w[0] <= hi) return w;
        } catch (const Error&) {
        }
    }
    throw InvalidParameters("random_mid1_vector: generation failed");
}

// a1 + a2 <= 1 and a3 <= 0.25.
inline WeightVector random_small_a_vector(Rng& rng, std::size_t max_n = 14) {
    for (int attempt = 0; attempt < 600; ++attempt) {
        double a1 = rng.range(0.3, 0.62);
        double a2 = rng.range(0.2, std::min(a1, 0.96 - a1));
        std::vector<double> t = {a1, a2};
        double residual = 1.0 - a1 * a1 - a2 * a2;
        double cap = std::min(a2 - 0.01, 0.24);
        if (cap < 0.1) continue;
        if (!detail::append_filler(t, residual, cap, max_n, rng)) continue;
        try {
            WeightVector w = detail::build_from_profile(t, rng);
            if (w.n() <= max_n && w.n() >= 3 && w[0] + w[1] <= 1 && w[2] <= make_rational(1, 4)) return w;
        } catch (const Error&) {
        }
    }
    throw InvalidParameters("random_small_a_vector: generation failed");
}

// 0.49 <= a1 <= 0.67 with a small term of size >= 0.25 (the five-cell range).
// Half of the draws also push a3 above 0.25, which keeps the vector out of
// the small_a dispatch range and exercises the five-cell prover branch.
inline WeightVector random_mid2_small_vector(Rng& rng, std::size_t max_n = 14) {
    for (int attempt = 0; attempt < 900; ++attempt) {
        bool force_mid2_label = rng.below(2) == 0;
        double a1 = rng.range(force_mid2_label ? 0.55 : 0.51, 0.65);
        double aj = rng.range(0.265, std::min(0.96 - a1, a1 - 0.02));
        std::vector<double> t = {a1, aj};
        double cap = std::min(aj - 0.012, 0.24);
        if (force_mid2_label) {
            double a3 = rng.range(0.262, aj - 0.004);
            t.push_back(a3);
            cap = std::min(a3 - 0.012, 0.24);
        }
        double used = 0;
        for (double x : t) used += x * x;
        if (used > 0.99) continue;
        if (cap < 0.1) continue;
        if (!detail::append_filler(t, 1.0 - used, cap, max_n, rng)) continue;
        try {
            WeightVector w = detail::build_from_profile(t, rng);
            if (w.n() > max_n || w.n() < 2) continue;
            if (!(make_rational(49, 100) <= w[0] && w[0] <= make_rational(67, 100))) continue;
            bool has_small_quarter = false;
            for (std::size_t i = 1; i < w.n(); ++i) {
                if (w[0] + w[i] <= 1 && w[i] >= make_rational(1, 4)) has_small_quarter = true;
            }
            if (has_small_quarter) return w;
        } catch (const Error&) {
        }
    }
    throw InvalidParameters("random_mid2_small_vector: generation failed");
}

// 0.49 <= a1 <= 0.67 with no small term of size >= 0.25; optionally one big
// term above 1 - a1.
inline WeightVector random_mid2_nosmall_vector(Rng& rng, std::size_t max_n = 14) {
    for (int attempt = 0; attempt < 600; ++attempt) {
        double a1 = rng.range(0.51, 0.65);
        std::vector<double> t = {a1};
        if (rng.below(2) == 0) {
            double big = rng.range(1.015 - a1, a1 - 0.01);
            if (big > 0.2) t.push_back(big);
        }
        double used = 0;
        for (double x : t) used += x * x;
        double residual = 1.0 - used;
        if (residual < 0.01) continue;
        if (!detail::append_filler(t, residual, 0.235, max_n, rng)) continue;
        try {
            WeightVector w = detail::build_from_profile(t, rng);
            if (w.n() > max_n || w.n() < 2) continue;
            if (!(make_rational(49, 100) <= w[0] && w[0] <= make_rational(67, 100))) continue;
            bool ok = true;
            for (std::size_t i = 1; i < w.n(); ++i) {
                if (w[0] + w[i] <= 1 && w[i] >= make_rational(1, 4)) ok = false;
            }
            if (ok) return w;
        } catch (const Error&) {
        }
    }
    throw InvalidParameters("random_mid2_nosmall_vector: generation failed");
}

// a1 >= 0.67.
inline WeightVector random_big_a1_vector(Rng& rng, std::size_t max_n = 14) {
    for (int attempt = 0; attempt < 600; ++attempt) {
        double a1 = rng.range(0.685, 0.93);
        std::vector<double> t = {a1};
        double residual = 1.0 - a1 * a1;
        double cap = rng.range(0.1, std::min(a1 - 0.02, 0.5));
        if (!detail::append_filler(t, residual, cap, max_n, rng)) continue;
        try {
            WeightVector w = detail::build_from_profile(t, rng);
            if (w.n() <= max_n && w[0] >= make_rational(67, 100)) return w;
        } catch (const Error&) {
        }
    }
    throw InvalidParameters("random_big_a1_vector: generation failed");
}

}  // namespace rsum
