#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rsum/errors.hpp"
#include "rsum/rational.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

inline constexpr std::size_t kFullEnumerationLimit = 24;
inline constexpr std::size_t kMeetInMiddleLimit = 40;

// Exact law of a signed sum: (value, probability) atoms with strictly
// increasing values and probabilities summing to one.
struct SumDistribution {
    std::vector<std::pair<Rational, Rational>> atoms;

    Rational prob_abs_within(const Rational& t, bool strict = false) const {
        Rational p = 0;
        for (const auto& [v, q] : atoms) {
            Rational a = boost::multiprecision::abs(v);
            if (strict ? a < t : a <= t) p += q;
        }
        return p;
    }

    Rational second_moment() const {
        Rational s = 0;
        for (const auto& [v, q] : atoms) s += q * v * v;
        return s;
    }
};

namespace detail {

// Weights as integer numerators over one common denominator. Partial sums of
// n terms then live in Z/denom and all threshold tests reduce to integer
// cross-multiplications.
struct ScaledWeights {
    BigInt denom = 1;
    std::vector<BigInt> nums;

    bool fits64 = false;
    long long denom64 = 0;
    std::vector<long long> nums64;
};

inline ScaledWeights scale_weights(std::span<const Rational> ws) {
    ScaledWeights s;
    for (const auto& w : ws) s.denom = boost::multiprecision::lcm(s.denom, den(w));
    BigInt total = 0;
    for (const auto& w : ws) {
        s.nums.push_back(num(w) * (s.denom / den(w)));
        total += boost::multiprecision::abs(s.nums.back());
    }
    // headroom: sums, 3x reflected sums and threshold cross products must all
    // stay inside long long / __int128
    const BigInt limit = BigInt(1) << 40;
    if (s.denom <= limit && total <= limit) {
        s.fits64 = true;
        s.denom64 = static_cast<long long>(s.denom);
        for (const auto& v : s.nums) s.nums64.push_back(static_cast<long long>(v));
    }
    return s;
}

// Scaled threshold: value/denom compared against tnum/tden via wide products.
template <class I, class Wide>
struct ScaledThreshold {
    Wide rhs;   // tnum * denom
    Wide tden;  // threshold denominator

    static ScaledThreshold make(const Rational& t, const I& denom) {
        ScaledThreshold st;
        st.rhs = static_cast<Wide>(I(num(t))) * static_cast<Wide>(denom);
        st.tden = static_cast<Wide>(I(den(t)));
        return st;
    }
    bool abs_greater(const I& sum) const {  // |sum/denom| > t
        Wide lhs = static_cast<Wide>(sum);
        if (lhs < 0) lhs = -lhs;
        return lhs * tden > rhs;
    }
    bool abs_within(const I& sum, bool strict) const {  // |sum/denom| <= t (or <)
        Wide lhs = static_cast<Wide>(sum);
        if (lhs < 0) lhs = -lhs;
        lhs *= tden;
        return strict ? lhs < rhs : lhs <= rhs;
    }
};

template <>
inline ScaledThreshold<long long, __int128> ScaledThreshold<long long, __int128>::make(const Rational& t,
                                                                                       const long long& denom) {
    ScaledThreshold st;
    st.rhs = static_cast<__int128>(static_cast<long long>(num(t))) * denom;
    st.tden = static_cast<__int128>(static_cast<long long>(den(t)));
    return st;
}

// Merge-based DP for the exact terminal law: each weight doubles the sorted
// (value, count) list via two shifted copies merged back together.
template <class I>
std::vector<std::pair<I, std::uint64_t>> signed_sum_law(const std::vector<I>& nums) {
    std::vector<std::pair<I, std::uint64_t>> law{{I(0), 1}};
    for (const auto& w : nums) {
        std::vector<std::pair<I, std::uint64_t>> next;
        next.reserve(law.size() * 2);
        std::size_t i = 0, j = 0;
        while (i < law.size() || j < law.size()) {
            I a, b;
            bool ai = i < law.size(), bj = j < law.size();
            if (ai) a = law[i].first - w;
            if (bj) b = law[j].first + w;
            if (ai && (!bj || a < b)) {
                if (!next.empty() && next.back().first == a)
                    next.back().second += law[i].second;
                else
                    next.emplace_back(a, law[i].second);
                ++i;
            } else if (bj && (!ai || b < a)) {
                if (!next.empty() && next.back().first == b)
                    next.back().second += law[j].second;
                else
                    next.emplace_back(b, law[j].second);
                ++j;
            } else {  // equal values from both sides
                next.emplace_back(a, law[i].second + law[j].second);
                ++i;
                ++j;
            }
        }
        law = std::move(next);
    }
    return law;
}

// Counts sign patterns with |sum| <= t (or < t) by meeting in the middle:
// enumerate both halves, sort one, slide a window over it.
template <class I, class Wide>
std::uint64_t count_abs_within(const std::vector<I>& nums, const I& denom, const Rational& t, bool strict) {
    const std::size_t n = nums.size();
    const std::size_t h = n / 2;
    auto enumerate = [](std::span<const I> part) {
        std::vector<I> sums{I(0)};
        for (const auto& w : part) {
            std::vector<I> next;
            next.reserve(sums.size() * 2);
            for (const auto& s : sums) next.push_back(s - w);
            for (const auto& s : sums) next.push_back(s + w);
            sums = std::move(next);
        }
        return sums;
    };
    std::vector<I> left = enumerate(std::span<const I>(nums.data(), h));
    std::vector<I> right = enumerate(std::span<const I>(nums.data() + h, n - h));
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());

    auto th = ScaledThreshold<I, Wide>::make(t, denom);
    // |L + R| <= t  <=>  -t <= L+R <= t; as L increases the admissible window
    // of R slides left, so both pointers are monotone.
    std::uint64_t count = 0;
    std::size_t lo = right.size(), hi = right.size();
    auto below_lower = [&](const I& sum) {  // sum/denom < -t (or <= for strict)
        Wide lhs = static_cast<Wide>(sum) * th.tden;
        return strict ? lhs <= -th.rhs : lhs < -th.rhs;
    };
    auto above_upper = [&](const I& sum) {  // sum/denom > t (or >= for strict)
        Wide lhs = static_cast<Wide>(sum) * th.tden;
        return strict ? lhs >= th.rhs : lhs > th.rhs;
    };
    for (const auto& L : left) {
        while (lo > 0 && !below_lower(L + right[lo - 1])) --lo;
        while (hi > 0 && above_upper(L + right[hi - 1])) --hi;
        count += hi - lo;
    }
    return count;
}

}  // namespace detail

// Exact law of sum(eps_i * w_i) over uniform independent signs. The weights
// need not form a unit vector (residual sums use this too).
inline SumDistribution distribution_of(std::span<const Rational> weights,
                                       std::size_t limit = kFullEnumerationLimit) {
    if (weights.size() > limit) {
        throw DimensionTooLarge("n = " + std::to_string(weights.size()) + " exceeds enumeration limit " +
                                std::to_string(limit));
    }
    detail::ScaledWeights sw = detail::scale_weights(weights);
    SumDistribution dist;
    const Rational total = Rational(BigInt(1) << weights.size());
    auto emit = [&](const auto& law, const auto& denom) {
        dist.atoms.reserve(law.size());
        for (const auto& [v, c] : law) {
            dist.atoms.emplace_back(Rational(BigInt(v), BigInt(denom)), Rational(BigInt(c)) / total);
        }
    };
    if (sw.fits64) {
        emit(detail::signed_sum_law<long long>(sw.nums64), sw.denom64);
    } else {
        emit(detail::signed_sum_law<BigInt>(sw.nums), sw.denom);
    }
    return dist;
}

inline SumDistribution exact_distribution(const WeightVector& a, std::size_t limit = kFullEnumerationLimit) {
    return distribution_of(a.weights(), limit);
}

// Exact P(|sum| <= t) (or strict <) without materializing the law.
inline Rational prob_abs_within(std::span<const Rational> weights, const Rational& t, bool strict = false,
                                std::size_t limit = kMeetInMiddleLimit) {
    if (t < 0) throw InvalidParameters("threshold must be nonnegative");
    if (weights.size() > limit) {
        throw DimensionTooLarge("n = " + std::to_string(weights.size()) + " exceeds meet-in-the-middle limit " +
                                std::to_string(limit));
    }
    detail::ScaledWeights sw = detail::scale_weights(weights);
    const BigInt tlimit = BigInt(1) << 40;
    bool t_fits = boost::multiprecision::abs(num(t)) <= tlimit && den(t) <= tlimit;
    std::uint64_t count = sw.fits64 && t_fits
                              ? detail::count_abs_within<long long, __int128>(sw.nums64, sw.denom64, t, strict)
                              : detail::count_abs_within<BigInt, BigInt>(sw.nums, sw.denom, t, strict);
    return Rational(BigInt(count), BigInt(1) << weights.size());
}

inline Rational prob_abs_within(const WeightVector& a, const Rational& t, bool strict = false,
                                std::size_t limit = kMeetInMiddleLimit) {
    return prob_abs_within(std::span<const Rational>(a.weights()), t, strict, limit);
}

// Exact one-sided P(sum >= x) for x >= 0, via symmetry of the signed sum.
inline Rational prob_ge(std::span<const Rational> weights, const Rational& x,
                        std::size_t limit = kMeetInMiddleLimit) {
    if (x < 0) throw InvalidParameters("prob_ge expects x >= 0");
    Rational within = prob_abs_within(weights, x, /*strict=*/false, limit);
    if (x == 0) {
        return (1 + within) / 2;  // within = P(S = 0)
    }
    Rational below = prob_abs_within(weights, x, /*strict=*/true, limit);
    Rational at_x = within - below;        // P(|S| = x) = 2 P(S = x) for x > 0
    Rational above = 1 - within;           // P(|S| > x)
    return above / 2 + at_x / 2;
}

inline Rational second_moment(const WeightVector& a) { return a.second_moment(); }

}  // namespace rsum
