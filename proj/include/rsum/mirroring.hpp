#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsum/distribution.hpp"
#include "rsum/errors.hpp"
#include "rsum/partition.hpp"
#include "rsum/rational.hpp"
#include "rsum/tail_bounds.hpp"
#include "rsum/weight_vector.hpp"

namespace rsum {

enum class ProcessOrder { Forward, ReverseAfterFirst };

enum class ReflectionKind { TopEscape, ResidualBandLow, ResidualBandHigh, TailSplit, ReverseLadder };

// A stopped-and-reflected partial-sum process: which indices are summed in
// which order, and the (possibly step-dependent) crossing threshold. Step
// numbers handed to `threshold` follow the process convention: forward
// processes step through t = start_index..n, the reverse process through
// t = 1..n with the top weight first and the smallest weight second.
struct ReflectionSpec {
    ReflectionKind kind;
    ProcessOrder order = ProcessOrder::Forward;
    std::size_t start_index = 1;  // 1-based
    std::function<Rational(std::size_t)> threshold;
};

inline ReflectionSpec spec_top_escape() {
    return {ReflectionKind::TopEscape, ProcessOrder::Forward, 1,
            [](std::size_t) { return make_rational(3, 4); }};
}
inline ReflectionSpec spec_residual_band_low(const WeightVector& a) {
    Rational t = 1 - a[0];
    return {ReflectionKind::ResidualBandLow, ProcessOrder::Forward, 3, [t](std::size_t) { return t; }};
}
inline ReflectionSpec spec_residual_band_high(const WeightVector& a) {
    Rational t = 1 + a[0] - 2 * a[1];
    return {ReflectionKind::ResidualBandHigh, ProcessOrder::Forward, 3, [t](std::size_t) { return t; }};
}
inline ReflectionSpec spec_tail_split() {
    return {ReflectionKind::TailSplit, ProcessOrder::Forward, 4,
            [](std::size_t) { return make_rational(67, 200); }};
}
// Threshold at step t is 1 - a_{n-t+1}: one minus the weight added next.
inline ReflectionSpec spec_reverse_ladder(const WeightVector& a) {
    std::vector<Rational> w = a.weights();
    return {ReflectionKind::ReverseLadder, ProcessOrder::ReverseAfterFirst, 1, [w](std::size_t t) {
                return Rational(1 - w[w.size() - t]);  // a_{n-t+1}, 1-based
            }};
}

struct ReflectedPath {
    Rational original_terminal;
    Rational reflected_terminal;
    std::optional<std::size_t> stop_step;  // process step t of the first crossing
    std::optional<Rational> stop_value;
};

namespace detail {

// 0-based weight indices in process order.
inline std::vector<std::size_t> process_indices(const ReflectionSpec& spec, std::size_t n) {
    std::vector<std::size_t> idx;
    if (spec.order == ProcessOrder::Forward) {
        if (spec.start_index < 1 || spec.start_index > n) throw InvalidParameters("start_index out of range");
        for (std::size_t i = spec.start_index - 1; i < n; ++i) idx.push_back(i);
    } else {
        idx.push_back(0);
        for (std::size_t i = n; i >= 2; --i) idx.push_back(i - 1);
    }
    return idx;
}

inline std::size_t paper_step(const ReflectionSpec& spec, std::size_t j /*0-based process step*/) {
    return spec.order == ProcessOrder::Forward ? spec.start_index + j : j + 1;
}

// Enumerates all sign patterns of the processed indices and hands the scaled
// (original, reflected) terminals to the visitor.
template <class I, class Wide, class Visit>
void for_each_reflected_path(const std::vector<I>& nums, const std::vector<Wide>& th_num_scaled,
                             const std::vector<Wide>& th_den, Visit&& visit) {
    const std::size_t m = nums.size();
    const std::uint64_t total = std::uint64_t(1) << m;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        I sum = 0;
        I stop_value = 0;
        bool stopped = false;
        for (std::size_t j = 0; j < m; ++j) {
            if ((mask >> j) & 1U) {
                sum += nums[j];
            } else {
                sum -= nums[j];
            }
            if (!stopped) {
                Wide mag = static_cast<Wide>(sum);
                if (mag < 0) mag = -mag;
                if (mag * th_den[j] > th_num_scaled[j]) {
                    stopped = true;
                    stop_value = sum;
                }
            }
        }
        I reflected = stopped ? I(2 * stop_value - sum) : sum;
        visit(sum, reflected);
    }
}

struct ScaledProcess {
    ScaledWeights sw;
    std::vector<Rational> thresholds;  // per process step
};

inline ScaledProcess scale_process(const WeightVector& a, const ReflectionSpec& spec) {
    auto idx = process_indices(spec, a.n());
    std::vector<Rational> ordered;
    ordered.reserve(idx.size());
    for (std::size_t i : idx) ordered.push_back(a[i]);
    ScaledProcess p;
    p.sw = scale_weights(ordered);
    for (std::size_t j = 0; j < idx.size(); ++j) p.thresholds.push_back(spec.threshold(paper_step(spec, j)));
    return p;
}

template <class I, class Wide, class Visit>
void run_scaled(const ScaledProcess& p, const std::vector<I>& nums, const I& denom, Visit&& visit) {
    std::vector<Wide> th_num, th_den;
    for (const auto& t : p.thresholds) {
        auto st = ScaledThreshold<I, Wide>::make(t, denom);
        th_num.push_back(st.rhs);
        th_den.push_back(st.tden);
    }
    for_each_reflected_path<I, Wide>(nums, th_num, th_den, visit);
}

// Dispatches on the fast/big integer path.
template <class Visit64, class VisitBig>
void enumerate_paths(const WeightVector& a, const ReflectionSpec& spec, std::size_t limit, Visit64&& v64,
                     VisitBig&& vbig) {
    ScaledProcess p = scale_process(a, spec);
    if (p.sw.nums.size() > limit) {
        throw DimensionTooLarge("process length " + std::to_string(p.sw.nums.size()) + " exceeds limit " +
                                std::to_string(limit));
    }
    if (p.sw.fits64) {
        run_scaled<long long, __int128>(p, p.sw.nums64, p.sw.denom64, v64);
    } else {
        run_scaled<BigInt, BigInt>(p, p.sw.nums, p.sw.denom, vbig);
    }
}

}  // namespace detail

inline constexpr std::size_t kReflectionEnumLimit = 20;

// Deterministic single-path evaluation: partial sums in process order, first
// strict crossing fixes the stop, the tail is reflected through 2*stop - x.
inline ReflectedPath run_reflection(const WeightVector& a, const ReflectionSpec& spec,
                                    const std::vector<int>& signs) {
    if (signs.size() != a.n()) throw InvalidParameters("signs must have length n");
    for (int s : signs) {
        if (s != 1 && s != -1) throw InvalidParameters("signs must be +1/-1");
    }
    auto idx = detail::process_indices(spec, a.n());
    ReflectedPath path;
    Rational sum = 0;
    bool stopped = false;
    Rational stop_value = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        sum += Rational(signs[idx[j]]) * a[idx[j]];
        if (!stopped && boost::multiprecision::abs(sum) > spec.threshold(detail::paper_step(spec, j))) {
            stopped = true;
            stop_value = sum;
            path.stop_step = detail::paper_step(spec, j);
            path.stop_value = stop_value;
        }
    }
    path.original_terminal = sum;
    path.reflected_terminal = stopped ? Rational(2 * stop_value - sum) : sum;
    return path;
}

// Exact check that reflecting at the stopping time preserves the terminal
// law, by full enumeration of the processed signs.
inline bool check_distribution_equality(const WeightVector& a, const ReflectionSpec& spec,
                                        std::size_t limit = kReflectionEnumLimit) {
    bool equal = true;
    auto compare = [&](auto& original, auto& reflected) { equal = original == reflected; };
    {
        std::map<long long, std::uint64_t> lo, lr;
        std::map<BigInt, std::uint64_t> bo, br;
        bool big = false;
        detail::enumerate_paths(
            a, spec, limit,
            [&](long long o, long long r) {
                ++lo[o];
                ++lr[r];
            },
            [&](const BigInt& o, const BigInt& r) {
                big = true;
                ++bo[o];
                ++br[r];
            });
        if (big) {
            compare(bo, br);
        } else {
            compare(lo, lr);
        }
    }
    return equal;
}

// Exact P(|original| > level and |reflected| > level).
inline Rational joint_failure_probability(const WeightVector& a, const ReflectionSpec& spec, const Rational& level,
                                          std::size_t limit = kReflectionEnumLimit) {
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    detail::ScaledProcess p = detail::scale_process(a, spec);
    if (p.sw.nums.size() > limit) {
        throw DimensionTooLarge("process length exceeds limit");
    }
    if (p.sw.fits64) {
        auto lt = detail::ScaledThreshold<long long, __int128>::make(level, p.sw.denom64);
        detail::run_scaled<long long, __int128>(p, p.sw.nums64, p.sw.denom64, [&](long long o, long long r) {
            ++total;
            if (lt.abs_greater(o) && lt.abs_greater(r)) ++hits;
        });
    } else {
        auto bt = detail::ScaledThreshold<BigInt, BigInt>::make(level, p.sw.denom);
        detail::run_scaled<BigInt, BigInt>(p, p.sw.nums, p.sw.denom, [&](const BigInt& o, const BigInt& r) {
            ++total;
            if (bt.abs_greater(o) && bt.abs_greater(r)) ++hits;
        });
    }
    return Rational(BigInt(hits), BigInt(total));
}

// Pathwise dichotomy: every pattern with both terminals beyond 1 must push
// one of them beyond 2.5. Only meaningful for the two escape constructions,
// and only inside their case ranges.
inline bool check_escape_implication(const WeightVector& a, const ReflectionSpec& spec,
                                     std::size_t limit = kReflectionEnumLimit) {
    if (spec.kind == ReflectionKind::TopEscape) {
        if (a.n() < 3 || a[0] + a[1] > 1 || a[2] > make_rational(1, 4)) {
            throw OutOfCaseRange("top escape needs a1+a2 <= 1 and a3 <= 0.25");
        }
    } else if (spec.kind == ReflectionKind::ReverseLadder) {
        if (a[0] < make_rational(49, 100) || a[0] > make_rational(67, 100)) {
            throw OutOfCaseRange("reverse ladder needs 0.49 <= a1 <= 0.67");
        }
        for (std::size_t i = 1; i < a.n(); ++i) {
            if (a[0] + a[i] <= 1 && a[i] >= make_rational(1, 4)) {
                throw OutOfCaseRange("reverse ladder escape needs no small term of size >= 0.25");
            }
        }
    } else {
        throw OutOfCaseRange("escape dichotomy applies to the escape constructions only");
    }

    detail::ScaledProcess p = detail::scale_process(a, spec);
    if (p.sw.nums.size() > limit) throw DimensionTooLarge("process length exceeds limit");
    const Rational one(1);
    const Rational escape = make_rational(5, 2);
    bool ok = true;
    if (p.sw.fits64) {
        auto t1 = detail::ScaledThreshold<long long, __int128>::make(one, p.sw.denom64);
        auto t25 = detail::ScaledThreshold<long long, __int128>::make(escape, p.sw.denom64);
        detail::run_scaled<long long, __int128>(p, p.sw.nums64, p.sw.denom64, [&](long long o, long long r) {
            if (t1.abs_greater(o) && t1.abs_greater(r) && !t25.abs_greater(o) && !t25.abs_greater(r)) ok = false;
        });
    } else {
        auto t1 = detail::ScaledThreshold<BigInt, BigInt>::make(one, p.sw.denom);
        auto t25 = detail::ScaledThreshold<BigInt, BigInt>::make(escape, p.sw.denom);
        detail::run_scaled<BigInt, BigInt>(p, p.sw.nums, p.sw.denom, [&](const BigInt& o, const BigInt& r) {
            if (t1.abs_greater(o) && t1.abs_greater(r) && !t25.abs_greater(o) && !t25.abs_greater(r)) ok = false;
        });
    }
    return ok;
}

// Pathwise form of the band-halving arguments: at most one of the two
// terminals may land inside the given band of |.| values.
inline bool check_band_exclusion(const WeightVector& a, const ReflectionSpec& spec, const Interval& band,
                                 std::size_t limit = kReflectionEnumLimit) {
    if (spec.kind != ReflectionKind::ResidualBandLow && spec.kind != ReflectionKind::ResidualBandHigh) {
        throw OutOfCaseRange("band exclusion applies to the residual band constructions");
    }
    if (!band.upper) throw InvalidParameters("band must be bounded");
    bool ok = true;
    auto in_band = [&](const Rational& v) { return band.contains(boost::multiprecision::abs(v)); };
    detail::ScaledProcess p = detail::scale_process(a, spec);
    if (p.sw.nums.size() > limit) throw DimensionTooLarge("process length exceeds limit");
    // exact membership needs both endpoints; reuse rational comparisons on the
    // scaled sums by converting back (band checks run at desk scale only)
    auto visit = [&](const auto& o, const auto& r, const auto& denom) {
        Rational ov{BigInt(o), BigInt(denom)};
        Rational rv{BigInt(r), BigInt(denom)};
        if (in_band(ov) && in_band(rv)) ok = false;
    };
    if (p.sw.fits64) {
        detail::run_scaled<long long, __int128>(p, p.sw.nums64, p.sw.denom64,
                                                [&](long long o, long long r) { visit(o, r, p.sw.denom64); });
    } else {
        detail::run_scaled<BigInt, BigInt>(p, p.sw.nums, p.sw.denom,
                                           [&](const BigInt& o, const BigInt& r) { visit(o, r, p.sw.denom); });
    }
    return ok;
}

// Three-block sign-flip analysis of the residual sum S = S_a + S_b + S_c,
// split at the first crossing of 0.335 by the partial sums beyond the third
// weight.
struct TripleSplitReport {
    bool tau_choice_exists = true;   // |S_c| <= 0.91 admits a flip with |S_tau| <= 0.335
    bool flipped_laws_equal = true;  // each of the 8 flipped sums has the law of S
    Rational p_tail_within;          // exact P(|S_c| <= 0.91)
    bool tail_mass_ok = false;       // p_tail_within >= 0.46
    bool passed() const { return tau_choice_exists && flipped_laws_equal && tail_mass_ok; }
};

inline TripleSplitReport check_triple_split_lemma(const WeightVector& a, std::size_t limit = 16) {
    if (a.n() < 4) throw OutOfCaseRange("triple split needs n >= 4");
    if (!(make_rational(1, 4) <= a[2] && a[2] <= a[0] && a[0] <= make_rational(49, 100))) {
        throw OutOfCaseRange("triple split needs 0.25 <= a3 <= a1 <= 0.49");
    }
    if (a[0] + a[1] > make_rational(133, 200)) {
        throw OutOfCaseRange("triple split needs a1 + a2 <= 0.665");
    }
    if (a.n() > limit + 2) throw DimensionTooLarge("triple split enumeration limit exceeded");

    std::vector<Rational> residual = a.suffix(3);
    detail::ScaledWeights sw = detail::scale_weights(residual);

    TripleSplitReport report;
    std::uint64_t tail_hits = 0;
    const std::uint64_t total = std::uint64_t(1) << residual.size();

    auto run = [&](const auto& nums, const auto& denom) {
        using I = std::decay_t<decltype(denom)>;
        using Wide = std::conditional_t<std::is_same_v<I, long long>, __int128, BigInt>;
        auto t_split = detail::ScaledThreshold<I, Wide>::make(make_rational(67, 200), denom);
        auto t_tail = detail::ScaledThreshold<I, Wide>::make(make_rational(91, 100), denom);
        const std::size_t m = nums.size();
        std::vector<std::map<I, std::uint64_t>> laws(8);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            I s_a = ((mask & 1U) ? nums[0] : I(-nums[0]));
            I s_b = 0, s_c = 0;
            bool crossed = false;
            for (std::size_t j = 1; j < m; ++j) {
                I term = ((mask >> j) & 1U) ? nums[j] : I(-nums[j]);
                if (!crossed) {
                    s_b += term;
                    if (t_split.abs_greater(s_b)) crossed = true;
                } else {
                    s_c += term;
                }
            }
            for (int tau = 0; tau < 8; ++tau) {
                I v = (tau & 1 ? s_a : I(-s_a)) + (tau & 2 ? s_b : I(-s_b)) + (tau & 4 ? s_c : I(-s_c));
                ++laws[tau][v];
            }
            if (!t_tail.abs_greater(s_c)) {
                ++tail_hits;
                bool found = false;
                for (int tau = 0; tau < 8 && !found; ++tau) {
                    I v = (tau & 1 ? s_a : I(-s_a)) + (tau & 2 ? s_b : I(-s_b)) + (tau & 4 ? s_c : I(-s_c));
                    if (!t_split.abs_greater(v)) found = true;
                }
                if (!found) report.tau_choice_exists = false;
            }
        }
        for (int tau = 0; tau < 7; ++tau) {
            if (laws[tau] != laws[tau + 1]) report.flipped_laws_equal = false;
        }
    };
    if (sw.fits64) {
        run(sw.nums64, sw.denom64);
    } else {
        run(sw.nums, sw.denom);
    }
    report.p_tail_within = Rational(BigInt(tail_hits), BigInt(total));
    report.tail_mass_ok = report.p_tail_within >= constants::kTargetBound;
    return report;
}

}  // namespace rsum
