#pragma once

#include <vector>

#include "ideoarith/intpoly.hpp"
#include "ideoarith/interval.hpp"

namespace ideoarith {

// Exact rational complex point.
struct RatC {
    Rat re, im;

    RatC() : re(0), im(0) {}
    RatC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    Rat norm2() const { return re * re + im * im; }
    RatC conj() const { return RatC(re, -im); }
};

RatC operator+(const RatC& a, const RatC& b);
RatC operator-(const RatC& a, const RatC& b);
RatC operator*(const RatC& a, const RatC& b);
RatC operator/(const RatC& a, const RatC& b);  // throws DivisionByZero

// Rectangle enclosure of a complex number.
struct BoxC {
    Interval re, im;
};

BoxC operator+(const BoxC& a, const BoxC& b);
BoxC operator-(const BoxC& a, const BoxC& b);
BoxC operator*(const BoxC& a, const BoxC& b);

// Certified root enclosure: the closed disk |z - center| <= radius contains
// exactly one root of its squarefree factor, counted here with the
// multiplicity that root carries in the original polynomial.
struct RootDisk {
    RatC center;
    Rat radius;
    int multiplicity;
};

// All complex roots of f (degree >= 1), as pairwise-certified disks per
// squarefree factor.  Disk radii are at most 2^-bits.  Raises
// RootIsolationFailed if certification cannot be reached.
std::vector<RootDisk> isolate_roots(const IntPoly& f, unsigned bits);

// Enclosure of |alpha| for the root in the disk.
Interval modulus_interval(const RootDisk& d, unsigned bits);

// Enclosure of |theta - alpha| for real theta given by an enclosure.
Interval distance_interval(const RootDisk& d, const Interval& theta, unsigned bits);

// |lead(f)| * prod max(1, |alpha|) over all roots with multiplicity, to a
// relative width of about 2^-bits.
Interval mahler_measure(const IntPoly& f, unsigned bits);

// Exact irreducibility over Q (content ignored), by certified root-subset
// factor reconstruction.  Degree cap 12; raises SearchSpaceTooLarge beyond.
bool is_irreducible(const IntPoly& f);

}  // namespace ideoarith
