#include "ideoarith/interval.hpp"

#include <algorithm>
#include <utility>

namespace ideoarith {

Interval::Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) raise("InvertedInterval", "interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

Interval operator*(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) raise("DivisorStraddlesZero", "interval division by an enclosure of zero");
    Rat p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval abs_i(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return Interval(Rat(0), std::max(Rat(-a.lo), a.hi));
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

bool intersects(const Interval& a, const Interval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!intersects(a, b)) raise("EmptyIntersection", "certified-disjoint enclosures");
    return Interval(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

Interval compress(const Interval& a, unsigned bits) {
    return Interval(dyadic_floor(a.lo, bits), dyadic_ceil(a.hi, bits));
}

namespace {

// Largest s/2^bits with (s/2^bits)^2 <= v, for v >= 0.
Rat sqrt_lower(const Rat& v, unsigned bits) {
    Int scaled = floor_rat(v * pow2(2L * bits));
    return Rat(isqrt_floor(scaled)) * pow2(-static_cast<long>(bits));
}

// Smallest convenient s/2^bits with (s/2^bits)^2 >= v.
Rat sqrt_upper(const Rat& v, unsigned bits) {
    Rat scaled_r = v * pow2(2L * bits);
    Int scaled = ceil_rat(scaled_r);
    Int t = isqrt_floor(scaled);
    if (t * t < scaled || Rat(scaled) != scaled_r) ++t;
    return Rat(t) * pow2(-static_cast<long>(bits));
}

Rat kth_root_lower(const Rat& v, unsigned k, unsigned bits) {
    Int scaled = floor_rat(v * pow2(static_cast<long>(k) * bits));
    return Rat(iroot_floor(scaled, k)) * pow2(-static_cast<long>(bits));
}

Rat kth_root_upper(const Rat& v, unsigned k, unsigned bits) {
    Rat scaled_r = v * pow2(static_cast<long>(k) * bits);
    Int scaled = ceil_rat(scaled_r);
    Int t = iroot_floor(scaled, k);
    if (pow_int(t, k) < scaled || Rat(scaled) != scaled_r) ++t;
    return Rat(t) * pow2(-static_cast<long>(bits));
}

}  // namespace

Interval sqrt_i(const Interval& a, unsigned bits) {
    if (a.lo < 0) raise("NegativeRadicand", "sqrt of an interval reaching below zero");
    return Interval(sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits));
}

Interval kth_root_i(const Interval& a, unsigned k, unsigned bits) {
    if (k == 0) raise("BadArgument", "zeroth root");
    if (a.lo < 0) raise("NegativeRadicand", "root of an interval reaching below zero");
    if (k == 1) return a;
    return Interval(kth_root_lower(a.lo, k, bits), kth_root_upper(a.hi, k, bits));
}

Interval pow_i(const Interval& a, long e) {
    if (e == 0) return Interval(Rat(1));
    if (e < 0) {
        if (a.contains_zero()) raise("DivisorStraddlesZero", "negative power of an enclosure of zero");
        return Interval(Rat(1)) / pow_i(a, -e);
    }
    if (e % 2 == 1) return Interval(pow_rat(a.lo, e), pow_rat(a.hi, e));
    // even power: monotone in |x|
    Rat lo_p = pow_rat(a.lo, e), hi_p = pow_rat(a.hi, e);
    Rat top = std::max(lo_p, hi_p);
    Rat bot = a.contains_zero() ? Rat(0) : std::min(lo_p, hi_p);
    return Interval(bot, top);
}

namespace {

// Shift-and-square binary logarithm.  Maintains, at step j with mantissa m,
//   emitted/2^j + log2(m)/2^j  (compared against)  log2(v) - e
// as a <= (round_down) or >= (round_up) invariant; rounding the mantissa in
// the chosen direction only strengthens it, and the grid contains 1 so the
// mantissa never drops below 1.
Rat log2_dir(const Rat& v, unsigned bits, bool round_up) {
    long e = floor_log2(v);
    Rat m = v * pow2(-e);  // m in [1, 2)
    unsigned work_bits = 2 * bits + 32;
    Int emitted = 0;
    for (unsigned j = 0; j < bits; ++j) {
        m = m * m;
        m = round_up ? dyadic_ceil(m, work_bits) : dyadic_floor(m, work_bits);
        emitted <<= 1;
        if (m >= 2) {
            emitted += 1;
            m /= 2;
        }
    }
    Rat frac = Rat(emitted) * pow2(-static_cast<long>(bits));
    if (round_up) frac += pow2(1 - static_cast<long>(bits));  // residual log2(m) < 2
    return Rat(e) + frac;
}

}  // namespace

Rat log2_lower(const Rat& v, unsigned bits) {
    if (v <= 0) raise("LogOfNonPositive", "log2 of nonpositive value");
    return log2_dir(v, bits, false);
}

Rat log2_upper(const Rat& v, unsigned bits) {
    if (v <= 0) raise("LogOfNonPositive", "log2 of nonpositive value");
    return log2_dir(v, bits, true);
}

Interval log2_i(const Interval& a, unsigned bits) {
    if (a.lo <= 0) raise("LogOfNonPositive", "log2 of an interval reaching zero");
    return Interval(log2_lower(a.lo, bits), log2_upper(a.hi, bits));
}

Cert cert_lt(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return Cert::Yes;
    if (a.lo >= b.hi) return Cert::No;
    return Cert::Unknown;
}

Cert cert_le(const Interval& a, const Interval& b) {
    if (a.hi <= b.lo) return Cert::Yes;
    if (a.lo > b.hi) return Cert::No;
    return Cert::Unknown;
}

SignCert cert_sign(const Interval& a) {
    if (a.lo > 0) return {Cert::Yes, +1};
    if (a.hi < 0) return {Cert::Yes, -1};
    if (a.lo == 0 && a.hi == 0) return {Cert::Yes, 0};
    return {Cert::Unknown, 0};
}

}  // namespace ideoarith
