#include "ideoarith/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

namespace ideoarith {

RatC operator+(const RatC& a, const RatC& b) { return RatC(a.re + b.re, a.im + b.im); }
RatC operator-(const RatC& a, const RatC& b) { return RatC(a.re - b.re, a.im - b.im); }

RatC operator*(const RatC& a, const RatC& b) {
    return RatC(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

RatC operator/(const RatC& a, const RatC& b) {
    Rat n2 = b.norm2();
    if (n2 == 0) raise("DivisionByZero", "complex division by zero");
    RatC t = a * b.conj();
    return RatC(t.re / n2, t.im / n2);
}

BoxC operator+(const BoxC& a, const BoxC& b) { return {a.re + b.re, a.im + b.im}; }
BoxC operator-(const BoxC& a, const BoxC& b) { return {a.re - b.re, a.im - b.im}; }

BoxC operator*(const BoxC& a, const BoxC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

namespace {

Rat dyadic_round(const Rat& r, unsigned bits) {
    Int scaled = floor_rat(r * pow2(static_cast<long>(bits)) + Rat(1, 2));
    return Rat(scaled) * pow2(-static_cast<long>(bits));
}

RatC round_c(const RatC& z, unsigned bits) {
    return RatC(dyadic_round(z.re, bits), dyadic_round(z.im, bits));
}

// Approximate Horner with per-step rounding; good enough for Newton steps,
// certification is done separately in outward arithmetic.
RatC approx_horner(const IntPoly& f, const RatC& z, unsigned bits) {
    RatC acc;
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc * z;
        acc.re += Rat(f.c[i]);
        acc = round_c(acc, bits);
    }
    return acc;
}

BoxC box_horner(const IntPoly& f, const BoxC& z, unsigned bits) {
    BoxC acc{Interval(Rat(0)), Interval(Rat(0))};
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + Interval(Rat(f.c[i]));
        acc.re = compress(acc.re, bits);
        acc.im = compress(acc.im, bits);
    }
    return acc;
}

Rat box_norm2_upper(const BoxC& b) {
    Rat re_m = std::max(abs_rat(b.re.lo), abs_rat(b.re.hi));
    Rat im_m = std::max(abs_rat(b.im.lo), abs_rat(b.im.hi));
    return re_m * re_m + im_m * im_m;
}

Rat box_norm2_lower(const BoxC& b) {
    Rat re_m = b.re.contains_zero() ? Rat(0) : std::min(abs_rat(b.re.lo), abs_rat(b.re.hi));
    Rat im_m = b.im.contains_zero() ? Rat(0) : std::min(abs_rat(b.im.lo), abs_rat(b.im.hi));
    return re_m * re_m + im_m * im_m;
}

double log2_int_approx(const Int& a) {
    Int m = a < 0 ? Int(-a) : a;
    if (m == 0) return 0.0;
    unsigned bits = boost::multiprecision::msb(m);
    if (bits <= 40) return std::log2(m.convert_to<double>());
    Int top = m >> (bits - 40);
    return static_cast<double>(bits - 40) + std::log2(top.convert_to<double>());
}

// Initial radii from the upper convex hull of (i, log2|a_i|): each hull edge
// of horizontal span s contributes s starting points at radius
// 2^(drop per index), which tracks the actual root magnitudes even when the
// coefficients span hundreds of orders of magnitude.
std::vector<double> initial_radii(const IntPoly& f) {
    int d = f.degree();
    std::vector<std::pair<double, double>> pts;  // (i, log2|a_i|)
    for (int i = 0; i <= d; ++i)
        if (f.c[i] != 0) pts.emplace_back(static_cast<double>(i), log2_int_approx(f.c[i]));
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            double cross = (b.first - a.first) * (p.second - a.second) -
                           (p.first - a.first) * (b.second - a.second);
            if (cross >= 0) hull.pop_back();  // keep the upper hull
            else break;
        }
        hull.push_back(p);
    }
    std::vector<double> radii;
    radii.reserve(d);
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        double span = hull[e + 1].first - hull[e].first;
        double slope = (hull[e].second - hull[e + 1].second) / span;
        double r = std::exp2(std::max(-500.0, std::min(500.0, slope)));
        for (int t = 0; t < static_cast<int>(span + 0.5); ++t) radii.push_back(r);
    }
    while (static_cast<int>(radii.size()) < d) radii.push_back(1.0);
    return radii;
}

using CD = std::complex<double>;

bool aberth_double(const IntPoly& f, int attempt, std::vector<CD>& out) {
    int d = f.degree();
    // scale coefficients so the largest is ~2^40; roots are unchanged
    unsigned top_bits = 0;
    for (const auto& a : f.c)
        if (a != 0) top_bits = std::max(top_bits, boost::multiprecision::msb(a < 0 ? Int(-a) : a));
    int shift = top_bits > 40 ? static_cast<int>(top_bits - 40) : 0;
    std::vector<double> cf(d + 1);
    for (int i = 0; i <= d; ++i) {
        Int a = f.c[i] < 0 ? Int(-f.c[i]) : f.c[i];
        double v = Int(a >> shift).convert_to<double>();
        cf[i] = f.c[i] < 0 ? -v : v;
    }

    std::vector<double> radii = initial_radii(f);
    std::vector<CD> z(d);
    double rot = 0.35 + 0.71 * attempt;
    for (int i = 0; i < d; ++i) {
        double ang = 2.0 * 3.14159265358979323846 * i / d + rot;
        z[i] = radii[i] * CD(std::cos(ang), std::sin(ang));
    }
    auto eval = [&](CD x, CD& p, CD& dp) {
        p = 0.0;
        dp = 0.0;
        for (int i = d; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + cf[i];
        }
    };
    int iters = 120 + 60 * attempt;
    for (int it = 0; it < iters; ++it) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            CD p, dp;
            eval(z[i], p, dp);
            if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) return false;
            CD n = (dp == 0.0) ? CD(1e-3, 1e-3) : p / dp;
            CD s = 0.0;
            for (int j = 0; j < d; ++j)
                if (j != i) {
                    CD diff = z[i] - z[j];
                    if (std::abs(diff) < 1e-300) diff = CD(1e-12, 1e-12);
                    s += 1.0 / diff;
                }
            CD w = n / (1.0 - n * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = n;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-13) break;
    }
    for (const auto& v : z)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    out = z;
    return true;
}

struct CertifiedDisk {
    RatC center;
    Rat radius;
};

// One disk around z certified to contain at least one root of f:
// radius = deg * |f(z)/f'(z)|, bounded outward.
bool certify_disk(const IntPoly& f, const IntPoly& fp, const RatC& z, unsigned bits,
                  CertifiedDisk& out) {
    BoxC zb{Interval(z.re), Interval(z.im)};
    BoxC fz = box_horner(f, zb, bits);
    BoxC fpz = box_horner(fp, zb, bits);
    Rat lo = box_norm2_lower(fpz);
    if (lo == 0) return false;
    Rat up = box_norm2_upper(fz);
    Rat d2 = Rat(f.degree()) * Rat(f.degree());
    Rat r2 = d2 * up / lo;
    Int scaled = ceil_rat(r2 * pow2(2L * bits));
    Int s = isqrt_floor(scaled) + 1;
    out.center = z;
    out.radius = Rat(s) * pow2(-static_cast<long>(bits));
    return true;
}

bool disks_disjoint(const CertifiedDisk& a, const CertifiedDisk& b) {
    Rat dr = a.center.re - b.center.re;
    Rat di = a.center.im - b.center.im;
    Rat sum = a.radius + b.radius;
    return dr * dr + di * di > sum * sum;
}

// All roots of a squarefree h with nonzero constant term, radii <= 2^-bits.
std::vector<CertifiedDisk> isolate_squarefree(const IntPoly& h, unsigned bits) {
    int d = h.degree();
    if (d == 1) return {{RatC(Rat(-h.c[0], h.c[1]), Rat(0)), Rat(0)}};
    IntPoly hp = derivative(h);
    Rat target = pow2(-static_cast<long>(bits));
    unsigned work = std::max<unsigned>(2 * bits + 64, 128);
    for (int attempt = 0; attempt < 7; ++attempt, work *= 2) {
        std::vector<CD> seeds;
        if (!aberth_double(h, attempt, seeds)) continue;
        std::vector<CertifiedDisk> disks(d);
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            RatC z(Rat(seeds[i].real()), Rat(seeds[i].imag()));
            z = round_c(z, work);
            for (int step = 0; step < 64; ++step) {
                RatC fz = approx_horner(h, z, work);
                RatC fpz = approx_horner(hp, z, work);
                if (fpz.norm2() == 0) {
                    z.re += pow2(-static_cast<long>(work / 2));
                    continue;
                }
                RatC delta = fz / fpz;
                z = round_c(z - delta, work);
                if (delta.norm2() <= pow2(-2L * (static_cast<long>(bits) + 8))) break;
            }
            ok = certify_disk(h, hp, z, work, disks[i]) && disks[i].radius <= target;
        }
        if (!ok) continue;
        for (int i = 0; i < d && ok; ++i)
            for (int j = i + 1; j < d && ok; ++j) ok = disks_disjoint(disks[i], disks[j]);
        if (ok) return disks;
    }
    raise("RootIsolationFailed", "could not certify disjoint root disks");
}

}  // namespace

std::vector<RootDisk> isolate_roots(const IntPoly& f, unsigned bits) {
    if (f.degree() < 1) raise("BadArgument", "root isolation needs degree >= 1");
    std::vector<RootDisk> out;
    for (auto& [factor, mult] : squarefree_decompose(f)) {
        IntPoly h = factor;
        if (h.coeff(0) == 0) {  // squarefree, so at most a simple zero root
            out.push_back({RatC(), Rat(0), mult});
            std::vector<Int> shifted(h.c.begin() + 1, h.c.end());
            h = IntPoly(std::move(shifted));
            if (h.degree() < 1) continue;
        }
        for (auto& cd : isolate_squarefree(h, bits))
            out.push_back({cd.center, cd.radius, mult});
    }
    return out;
}

Interval modulus_interval(const RootDisk& d, unsigned bits) {
    Rat n2 = d.center.norm2();
    Interval m = sqrt_i(Interval(n2), bits);
    Rat lo = m.lo - d.radius;
    if (lo < 0) lo = 0;
    return Interval(lo, m.hi + d.radius);
}

Interval distance_interval(const RootDisk& d, const Interval& theta, unsigned bits) {
    Interval dre = theta - Interval(d.center.re);
    Interval dim = -Interval(d.center.im);
    Interval n2 = dre * dre + dim * dim;
    Interval m = sqrt_i(n2, bits);
    Rat lo = m.lo - d.radius;
    if (lo < 0) lo = 0;
    return Interval(lo, m.hi + d.radius);
}

Interval mahler_measure(const IntPoly& f, unsigned bits) {
    if (f.is_zero()) raise("ZeroPolynomial", "Mahler measure of the zero polynomial");
    Int lead_abs = f.lead() < 0 ? Int(-f.lead()) : f.lead();
    if (f.degree() == 0) return Interval(Rat(lead_abs));
    for (unsigned prec = bits + 24;; prec *= 2) {
        Interval acc{Rat(lead_abs)};
        for (const auto& d : isolate_roots(f, prec)) {
            Interval m = modulus_interval(d, prec);
            Interval capped(std::max(Rat(1), m.lo), std::max(Rat(1), m.hi));
            for (int k = 0; k < d.multiplicity; ++k) acc = acc * capped;
        }
        if (acc.lo > 0 && acc.width() / acc.lo <= pow2(-static_cast<long>(bits)))
            return acc;
        if (prec > 16384) raise("PrecisionExhausted", "Mahler measure did not stabilize");
    }
}

namespace {

// divisors of |n| in ascending order (n is a leading coefficient, small)
std::vector<Int> divisors_of(const Int& n) {
    Int m = n < 0 ? Int(-n) : n;
    std::vector<Int> out;
    for (Int i = 1; i * i <= m; ++i)
        if (m % i == 0) {
            out.push_back(i);
            if (i * i != m) out.push_back(m / i);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool is_irreducible(const IntPoly& fin) {
    IntPoly f = primitive_part(fin);
    int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    if (d > 12) raise("SearchSpaceTooLarge", "irreducibility test capped at degree 12");
    if (f.coeff(0) == 0) return false;  // X divides
    {
        auto parts = squarefree_decompose(f);
        if (parts.size() != 1 || parts[0].second != 1) return false;
    }
    // rational root test knocks out linear factors early
    for (const Int& p : divisors_of(f.coeff(0)))
        for (const Int& q : divisors_of(f.lead()))
            for (int sgn : {1, -1})
                if (eval_rat(f, Rat(sgn * p, q)) == 0) return false;
    if (d <= 3) return true;  // no linear factor and degree <= 3

    std::vector<Int> lead_divs = divisors_of(f.lead());
    for (unsigned bits = 96;; bits *= 2) {
        auto disks = isolate_roots(f, bits);
        bool precise_enough = true;
        // try every root subset of size 2..d/2 as the root set of a factor
        for (unsigned mask = 1; mask + 1 < (1u << d) && precise_enough; ++mask) {
            int k = __builtin_popcount(mask);
            if (k < 2 || k > d / 2) continue;
            // prod (X - alpha) over the subset, in rectangle arithmetic
            std::vector<BoxC> poly{{Interval(Rat(1)), Interval(Rat(0))}};
            for (int i = 0; i < d; ++i) {
                if (!(mask & (1u << i))) continue;
                BoxC root{Interval(disks[i].center.re - disks[i].radius,
                                   disks[i].center.re + disks[i].radius),
                          Interval(disks[i].center.im - disks[i].radius,
                                   disks[i].center.im + disks[i].radius)};
                std::vector<BoxC> next(poly.size() + 1, BoxC{Interval(Rat(0)), Interval(Rat(0))});
                for (size_t j = 0; j < poly.size(); ++j) {
                    next[j + 1] = next[j + 1] + poly[j];
                    BoxC t = poly[j] * root;
                    next[j] = next[j] - t;
                }
                poly = std::move(next);
            }
            for (const Int& c : lead_divs) {
                // candidate coefficients c * e_j must all be integers
                std::vector<Int> cand(poly.size());
                bool feasible = true;
                for (size_t j = 0; j < poly.size() && feasible; ++j) {
                    Interval re = Interval(Rat(c)) * poly[j].re;
                    Interval im = Interval(Rat(c)) * poly[j].im;
                    if (!im.contains_zero()) {
                        feasible = false;  // certified non-real coefficient
                        break;
                    }
                    Int lo = ceil_rat(re.lo), hi = floor_rat(re.hi);
                    if (lo > hi) {
                        feasible = false;  // certified non-integral
                        break;
                    }
                    if (lo < hi) {
                        precise_enough = false;  // ambiguous box; escalate precision
                        break;
                    }
                    cand[j] = lo;
                }
                if (!precise_enough) break;
                if (!feasible) continue;
                if (try_divide_exact(f, IntPoly(std::move(cand))).has_value()) return false;
            }
        }
        if (precise_enough) return true;
        if (bits > 8192) raise("PrecisionExhausted", "irreducibility test did not stabilize");
    }
}

}  // namespace ideoarith
