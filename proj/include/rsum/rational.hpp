#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsum/errors.hpp"

namespace rsum {

// All certificate-path arithmetic runs on arbitrary-precision rationals.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

// Exact value of an IEEE double as a rational. Doubles are dyadic rationals,
// so this never rounds.
inline Rational exact_from_double(double x) { return Rational(x); }

// Parses "3/5", "7", "-2/9", "0.49", ".5". Decimal strings convert exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return c == ' '; }), s.end());
    if (s.empty()) throw ParseError("empty rational literal");

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    auto digits = [](std::string_view t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
    };

    std::string body = s.substr(pos);
    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string n = body.substr(0, slash), d = body.substr(slash + 1);
        if (!digits(n) || !digits(d)) throw ParseError("bad fraction: " + std::string(text));
        BigInt dn(d);
        if (dn == 0) throw ParseError("zero denominator: " + std::string(text));
        value = Rational(BigInt(n), dn);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        if (!digits(ip) || !digits(fp)) throw ParseError("bad decimal: " + std::string(text));
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        value = Rational(BigInt(ip) * scale + BigInt(fp), scale);
    } else {
        if (!digits(body)) throw ParseError("bad integer: " + std::string(text));
        value = Rational(BigInt(body));
    }
    return negative ? Rational(-value) : value;
}

// "7/8" for proper fractions, plain "3" when the denominator is 1.
inline std::string fraction_string(const Rational& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

// Decimal rendering with `significant` significant digits (round half up),
// trailing zeros trimmed. Exact values shorter than the budget print exactly.
inline std::string decimal_string(const Rational& q, int significant = 12) {
    if (q == 0) return "0";
    bool negative = q < 0;
    BigInt n = boost::multiprecision::abs(num(q));
    BigInt d = den(q);

    BigInt ip = n / d;
    BigInt rem = n % d;
    std::string int_part = ip.str();
    int sig_used = ip == 0 ? 0 : static_cast<int>(int_part.size());

    std::string frac;
    bool seen_sig = ip != 0;
    int sig = sig_used;
    const int max_frac_digits = 64;
    int round_up = 0;
    while (rem != 0 && static_cast<int>(frac.size()) < max_frac_digits) {
        rem *= 10;
        BigInt digit = rem / d;
        rem %= d;
        char c = static_cast<char>('0' + static_cast<int>(digit));
        if (!seen_sig && c != '0') seen_sig = true;
        if (seen_sig) ++sig;
        frac += c;
        if (sig >= significant) {
            // peek one more digit for rounding
            if (rem != 0) {
                BigInt peek = (rem * 10) / d;
                if (peek >= 5) round_up = 1;
            }
            break;
        }
    }
    if (round_up) {
        int i = static_cast<int>(frac.size()) - 1;
        for (; i >= 0; --i) {
            if (frac[i] == '9') {
                frac[i] = '0';
            } else {
                ++frac[i];
                break;
            }
        }
        if (i < 0) {
            BigInt carry_ip = ip + 1;
            int_part = carry_ip.str();
        }
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = int_part;
    if (!frac.empty()) out += "." + frac;
    if (out == "0" && q != 0) out = "0";  // fully rounded away
    return negative ? "-" + out : out;
}

// Nearest multiple of `step`, ties rounded half away from zero.
inline Rational round_to_grid(const Rational& a, const Rational& step) {
    if (step <= 0) throw InvalidParameters("grid step must be positive");
    Rational k = boost::multiprecision::abs(a) / step;
    BigInt q = num(k) / den(k);
    Rational frac = k - Rational(q);
    if (frac > Rational(1, 2) || frac == Rational(1, 2)) ++q;
    Rational r = Rational(q) * step;
    return a < 0 ? Rational(-r) : r;
}

inline bool is_multiple_of(const Rational& a, const Rational& step) {
    if (step == 0) return false;
    return den(Rational(a / step)) == 1;
}

inline Rational sum_of_squares(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

}  // namespace rsum
