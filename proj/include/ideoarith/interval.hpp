#pragma once

#include "ideoarith/numeric.hpp"

namespace ideoarith {

// Three-valued outcome of a certified comparison.
enum class Cert { Yes, No, Unknown };

// Closed rational interval [lo, hi].  All arithmetic is outward: the result
// encloses every value attainable from points of the operands, so enclosures
// stay sound under composition.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    explicit Interval(const Rat& v) : lo(v), hi(v) {}
    Interval(Rat l, Rat h);

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
// Throws DivisorStraddlesZero if b contains 0.
Interval operator/(const Interval& a, const Interval& b);

Interval abs_i(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
bool intersects(const Interval& a, const Interval& b);
// Throws EmptyIntersection if the operands are disjoint.
Interval intersect(const Interval& a, const Interval& b);

// Round endpoints outward onto the dyadic grid 2^-bits; caps endpoint size
// after long chains of exact operations.
Interval compress(const Interval& a, unsigned bits);

// Enclosure of sqrt over a nonnegative interval, endpoints on the 2^-bits
// grid.  Throws NegativeRadicand if a.lo < 0.
Interval sqrt_i(const Interval& a, unsigned bits);

// Enclosure of the k-th root (k >= 1) of a nonnegative interval.
Interval kth_root_i(const Interval& a, unsigned k, unsigned bits);

// x^e with integer e; negative e requires the interval to exclude zero.
Interval pow_i(const Interval& a, long e);

// Enclosure of log2 over a strictly positive interval, about `bits` correct
// fractional bits.  Reporting-quality (used for exponent estimates), still a
// true enclosure.
Interval log2_i(const Interval& a, unsigned bits);
Rat log2_lower(const Rat& v, unsigned bits);
Rat log2_upper(const Rat& v, unsigned bits);

// Certified order tests: Yes / No only when every point pair agrees.
Cert cert_lt(const Interval& a, const Interval& b);
Cert cert_le(const Interval& a, const Interval& b);
inline Cert cert_gt(const Interval& a, const Interval& b) { return cert_lt(b, a); }
inline Cert cert_ge(const Interval& a, const Interval& b) { return cert_le(b, a); }

// Sign of every point: +1, -1, 0 (point zero), or Unknown (straddles).
struct SignCert {
    Cert known;  // Yes when the sign is certified
    int sign;    // meaningful only when known == Cert::Yes
};
SignCert cert_sign(const Interval& a);

}  // namespace ideoarith
