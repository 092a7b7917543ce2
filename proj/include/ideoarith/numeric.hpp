#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ideoarith/error.hpp"

namespace ideoarith {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// floor(r) as an integer; cpp_int division truncates toward zero, so fix up
// the negative case by hand.
inline Int floor_rat(const Rat& r) {
    Int p = num(r);
    Int q = den(r);  // canonical form: q > 0
    Int t = p / q;
    if (p % q != 0 && p < 0) --t;
    return t;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

// Nearest integer, ties to even.  *tie (optional) reports whether the
// fractional part was exactly 1/2.
inline Int round_half_even(const Rat& r, bool* tie = nullptr) {
    Int n = floor_rat(r);
    Rat frac = r - Rat(n);
    if (tie) *tie = false;
    if (frac < Rat(1, 2)) return n;
    if (frac > Rat(1, 2)) return n + 1;
    if (tie) *tie = true;
    return (n % 2 == 0) ? n : n + 1;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) {
    if (n < 0) raise("NegativeRadicand", "isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

inline Int pow_int(const Int& b, unsigned long e) {
    return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2(long e) {
    if (e >= 0) return Rat(Int(1) << e);
    return Rat(Int(1), Int(1) << (-e));
}

inline Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    if (e > 0) return Rat(pow_int(num(b), e), pow_int(den(b), e));
    if (b == 0) raise("DivisionByZero", "zero to a negative power");
    return Rat(pow_int(den(b), -e), pow_int(num(b), -e));
}

// floor(n^(1/k)) for n >= 0, k >= 1, by binary search.
inline Int iroot_floor(const Int& n, unsigned k) {
    if (k == 0) raise("BadArgument", "zeroth root");
    if (n < 0) raise("NegativeRadicand", "integer root of negative integer");
    if (n == 0 || n == 1 || k == 1) return n;
    if (k == 2) return isqrt_floor(n);
    unsigned bits = boost::multiprecision::msb(n) + 1;
    Int hi = Int(1) << (bits / k + 1);
    Int lo = 0;
    while (lo < hi) {  // invariant: lo^k <= n < (hi+1)^k
        Int mid = (lo + hi + 1) / 2;
        if (pow_int(mid, k) <= n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// Largest e with 2^e <= r, for r > 0.
inline long floor_log2(const Rat& r) {
    if (r <= 0) raise("LogOfNonPositive", "floor_log2 of nonpositive rational");
    long e;
    if (r >= 1) {
        Int f = floor_rat(r);
        e = static_cast<long>(boost::multiprecision::msb(f));
    } else {
        Rat inv = Rat(1) / r;
        Int f = floor_rat(inv);
        e = -static_cast<long>(boost::multiprecision::msb(f)) - 1;
    }
    while (pow2(e) > r) --e;
    while (pow2(e + 1) <= r) ++e;
    return e;
}

// Round down / up to the dyadic grid with 2^bits denominators.
inline Rat dyadic_floor(const Rat& r, unsigned bits) {
    Int scaled = floor_rat(r * pow2(static_cast<long>(bits)));
    return Rat(scaled) * pow2(-static_cast<long>(bits));
}

inline Rat dyadic_ceil(const Rat& r, unsigned bits) {
    Int scaled = ceil_rat(r * pow2(static_cast<long>(bits)));
    return Rat(scaled) * pow2(-static_cast<long>(bits));
}

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::string to_string(const Rat& r) { return r.str(); }
inline std::string to_string(const Int& n) { return n.str(); }

}  // namespace ideoarith
