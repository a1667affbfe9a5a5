#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsum/distribution.hpp"
#include "rsum/errors.hpp"
#include "rsum/rational.hpp"

namespace rsum {

// Half-line interval with explicit endpoint membership; upper == nullopt
// means unbounded. Empty intervals (lower == upper with an open side) are
// legal values and carry probability zero.
struct Interval {
    Rational lower;
    std::optional<Rational> upper;
    bool lower_closed = false;
    bool upper_closed = true;

    bool contains(const Rational& v) const {
        if (lower_closed ? v < lower : v <= lower) return false;
        if (!upper) return true;
        return upper_closed ? v <= *upper : v < *upper;
    }
    bool empty() const { return upper && (*upper < lower || (*upper == lower && !(lower_closed && upper_closed))); }

    std::string to_string() const {
        std::string s = lower_closed ? "[" : "(";
        s += fraction_string(lower) + ", ";
        s += upper ? fraction_string(*upper) : "inf";
        s += upper && upper_closed ? "]" : ")";
        return s;
    }
};

enum class PartitionKind { SevenInterval, FiveInterval };

// Ordered cover of [0, inf) whose endpoints are linear in the two leading
// parameters, together with the conditional-exceedance weight of each cell.
struct IntervalPartition {
    PartitionKind kind;
    std::vector<Interval> intervals;
    std::vector<Rational> exceedance_weights;

    const Interval& interval(std::size_t idx_1based) const { return intervals[idx_1based - 1]; }
};

struct PartitionProbabilities {
    std::vector<Rational> p;

    Rational sum() const {
        Rational s = 0;
        for (const auto& x : p) s += x;
        return s;
    }
};

namespace detail {

inline void validate_cover(const std::vector<Interval>& iv) {
    if (iv.front().lower != 0 || !iv.front().lower_closed) {
        throw InvalidParameters("first interval must contain 0");
    }
    if (iv.front().upper && *iv.front().upper < 0) {
        throw InvalidParameters("first interval has negative upper endpoint");
    }
    for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
        if (!iv[i].upper) throw InvalidParameters("only the last interval may be unbounded");
        if (*iv[i].upper != iv[i + 1].lower) throw InvalidParameters("intervals must be consecutive");
        if (iv[i + 1].upper && *iv[i + 1].upper < iv[i + 1].lower) {
            throw InvalidParameters("interval endpoints out of order");
        }
    }
    if (iv.back().upper) throw InvalidParameters("last interval must be unbounded");
}

}  // namespace detail

// Seven consecutive cells with endpoints linear in (a1, a2) and exceedance
// weights (0, 1/4, 1/2, 3/4, 1, 1, 1). Requires 0 < a2 <= a1 and endpoint
// monotonicity (which the 0.25..0.49 parameter range always satisfies).
inline IntervalPartition build_seven_intervals(const Rational& a1, const Rational& a2) {
    if (a2 <= 0 || a2 > a1) throw InvalidParameters("need 0 < a2 <= a1");
    std::vector<Rational> ends = {
        1 - a1 - a2, 1 - a1 + a2, 1 + a1 - a2, 1 + a1 + a2, 3 - 3 * a1 + a2, 3 + 3 * a1 - 5 * a2,
    };
    IntervalPartition part;
    part.kind = PartitionKind::SevenInterval;
    part.intervals.push_back({Rational(0), ends[0], true, true});
    for (std::size_t i = 1; i < ends.size(); ++i) {
        part.intervals.push_back({ends[i - 1], ends[i], false, true});
    }
    part.intervals.push_back({ends.back(), std::nullopt, false, false});
    part.exceedance_weights = {0,           make_rational(1, 4), make_rational(1, 2), make_rational(3, 4),
                               Rational(1), Rational(1),         Rational(1)};
    detail::validate_cover(part.intervals);
    return part;
}

// Five-cell analogue around (a1, aj) with weights (0, 1/4, 1/2, 3/4, 1).
inline IntervalPartition build_five_intervals(const Rational& a1, const Rational& aj) {
    if (aj <= 0 || aj > a1) throw InvalidParameters("need 0 < aj <= a1");
    std::vector<Rational> ends = {1 - a1 - aj, 1 - a1 + aj, 1 + a1 - aj, 1 + a1 + aj};
    IntervalPartition part;
    part.kind = PartitionKind::FiveInterval;
    part.intervals.push_back({Rational(0), ends[0], true, true});
    for (std::size_t i = 1; i < ends.size(); ++i) {
        part.intervals.push_back({ends[i - 1], ends[i], false, true});
    }
    part.intervals.push_back({ends.back(), std::nullopt, false, false});
    part.exceedance_weights = {0, make_rational(1, 4), make_rational(1, 2), make_rational(3, 4), Rational(1)};
    detail::validate_cover(part.intervals);
    return part;
}

// Exact cell masses of |S| for the residual-sum law `tail`. Endpoint atoms are
// routed by the exact bracket conventions, so nothing is double counted.
inline PartitionProbabilities interval_probabilities(const SumDistribution& tail, const IntervalPartition& part) {
    PartitionProbabilities probs;
    probs.p.assign(part.intervals.size(), Rational(0));
    for (const auto& [v, q] : tail.atoms) {
        Rational a = boost::multiprecision::abs(v);
        for (std::size_t i = 0; i < part.intervals.size(); ++i) {
            if (part.intervals[i].contains(a)) {
                probs.p[i] += q;
                break;
            }
        }
    }
    return probs;
}

// Weighted exceedance mass: sum of weight_i * p_i.
inline Rational exceedance_probability(const PartitionProbabilities& probs, const IntervalPartition& part) {
    if (probs.p.size() != part.exceedance_weights.size()) throw InvalidParameters("size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < probs.p.size(); ++i) s += part.exceedance_weights[i] * probs.p[i];
    return s;
}

// Lower bound on the residual second moment: sum of p_i * (inf I_i)^2.
inline Rational second_moment_lhs(const PartitionProbabilities& probs, const IntervalPartition& part) {
    if (probs.p.size() != part.intervals.size()) throw InvalidParameters("size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < probs.p.size(); ++i) {
        const Rational& lo = part.intervals[i].lower;
        s += probs.p[i] * lo * lo;
    }
    return s;
}

}  // namespace rsum
