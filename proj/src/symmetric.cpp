#include "ideoarith/symmetric.hpp"

#include <algorithm>
#include <string>

#include "certify.hpp"
#include "ideoarith/error.hpp"

namespace ideoarith {
namespace {

Int iabs(const Int& v) { return v < 0 ? Int(-v) : v; }

// Exact sign of a + b*sqrt(5) over the integers; squaring replaces any root
// extraction, so the boundary ||F_n*phi|| = phi^-n resolves to a true zero.
int sign_z5(const Int& a, const Int& b) {
    if (b == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
    if (a == 0) return b > 0 ? 1 : -1;
    if ((a > 0) == (b > 0)) return a > 0 ? 1 : -1;
    Int a2 = a * a, b25 = 5 * b * b;
    if (a2 == b25) return 0;
    return a2 > b25 ? (a > 0 ? 1 : -1) : (b > 0 ? 1 : -1);
}

CausalTag tag_of_sign(int s) {
    if (s > 0) return CausalTag::TimeLike;
    if (s < 0) return CausalTag::SpaceLike;
    return CausalTag::LightLike;
}

// |n|^((a-b)/b) as an interval, exact integer power then b-th root.
Interval graded_weight(const Int& n, long a, long b, unsigned bits) {
    Interval base(Rat(iabs(n)));
    return kth_root_i(pow_i(base, a - b), static_cast<unsigned>(b), bits);
}

void check_kappa(const Rat& kappa, long& a, long& b) {
    if (kappa <= 1) raise("BadArgument", "grading exponent must exceed 1");
    if (num(kappa) > 64 || den(kappa) > 64)
        raise("BadArgument", "grading exponent numerator and denominator must stay at most 64");
    a = num(kappa).convert_to<long>();
    b = den(kappa).convert_to<long>();
}

// Enclosure of (A + B*sqrt5)/2 from one cached integer window around sqrt5;
// two big-int multiplies per call, cheap enough for exhaustive sweeps.
Interval z5_half_enclose(const Int& A, const Int& B) {
    static const unsigned kBits = 130;
    static const Int slo = isqrt_floor(Int(5) << (2 * kBits));
    static const Int shi = slo + 1;
    static const Int dens = Int(1) << (kBits + 1);
    Int base = A << kBits;
    Int wlo = base + B * (B >= 0 ? slo : shi);
    Int whi = base + B * (B >= 0 ? shi : slo);
    return Interval(Rat(wlo, dens), Rat(whi, dens));
}

}  // namespace

Int fibonacci(unsigned k) {
    if (k < 2) raise("BadArgument", "fibonacci index starts at 2");
    Int a = 1, b = 1;
    for (unsigned i = 2; i < k; ++i) {
        Int t = a + b;
        a = b;
        b = t;
    }
    return b;
}

Zeck zeckendorf(const Int& N) {
    if (N < 1) raise("BadArgument", "zeckendorf representation needs a positive integer");
    std::vector<Int> fib{0, 1, 1};  // fib[j] = F_j from j = 2 on
    while (fib.back() <= N) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    Zeck z;
    z.N = N;
    Int rem = N;
    for (size_t j = fib.size() - 1; rem > 0; --j) {
        if (j >= 2 && fib[j] <= rem) {
            z.indices.push_back(static_cast<unsigned>(j));
            rem -= fib[j];
            // rem < F_{j-1} now, so the next pick skips index j-1 by itself
        }
    }
    std::reverse(z.indices.begin(), z.indices.end());
    return z;
}

const char* to_string(CausalTag t) {
    switch (t) {
        case CausalTag::TimeLike: return "time-like";
        case CausalTag::SpaceLike: return "space-like";
        case CausalTag::LightLike: return "light-like";
    }
    return "?";
}

LorentzSample lorentz_pairing(const ApproxPair& a, const ApproxPair& b, size_t i) {
    if (!a.x || !b.x) raise("BadArgument", "pairing needs two attached pairs");
    if (a.x->describe() != b.x->describe())
        raise("MixedTheta", "pairing needs both sequences on one value, got " +
                                a.x->describe() + " and " + b.x->describe());
    if (i >= a.denoms.size() || i >= b.denoms.size())
        raise("IndexOutOfRange",
              "pairing index " + std::to_string(i) + " exceeds a sequence length");
    unsigned bits = std::max(a.precisionBits, b.precisionBits);
    LorentzSample s;
    s.index = i;

    // Diagonal samples report the component sign pair (sign n_i, sign eps_i)
    // of the sampled vector, so sigma is (+,+) or (-,-) exactly on time-like
    // samples; mixed samples report the signs of the two bilinear halves.
    bool diag = a.denoms[i] == b.denoms[i] && a.numers[i] == b.numers[i];
    int dsign = a.denoms[i] > 0 ? 1 : -1;

    auto ea = pair_error_exact(a.x, a.denoms[i], a.numers[i]);
    auto eb = pair_error_exact(b.x, b.denoms[i], b.numers[i]);
    if (ea && eb) {
        Surd h1 = *eb * Rat(a.denoms[i]);  // m * eps(n)
        Surd h2 = *ea * Rat(b.denoms[i]);  // n * eps(m)
        Surd val = (h1 + h2) * Rat(1, 2);
        s.sigma[0] = diag ? dsign : h1.sign();
        s.sigma[1] = diag ? ea->sign() : h2.sign();
        s.value = val.is_rational() ? Interval(val.u) : val.enclose(bits);
        s.tag = tag_of_sign(val.sign());
        return s;
    }

    for (unsigned bb = std::max(bits, 64u);; bb *= 2) {
        Interval em = pair_error_at(a, i, bb);
        Interval en = pair_error_at(b, i, bb);
        Interval h1 = Interval(Rat(a.denoms[i])) * en;
        Interval h2 = Interval(Rat(b.denoms[i])) * em;
        Interval val = (h1 + h2) * Interval(Rat(1, 2));
        SignCert s1 = cert_sign(h1), s2 = cert_sign(h2), sv = cert_sign(val);
        SignCert se = cert_sign(em);
        if (s1.known == Cert::Yes && s2.known == Cert::Yes && sv.known == Cert::Yes &&
            se.known == Cert::Yes) {
            s.sigma[0] = diag ? dsign : s1.sign;
            s.sigma[1] = diag ? se.sign : s2.sign;
            s.value = val;
            s.tag = tag_of_sign(sv.sign);
            return s;
        }
        if (bb >= precision_cap())
            raise("PrecisionExhausted", "pairing signs undecided at the precision cap");
    }
}

std::vector<Interval> theta_norm(const ApproxPair& p, size_t lo, size_t hi) {
    return theta_norm_graded(p, Rat(2), lo, hi);
}

std::vector<Interval> theta_norm_graded(const ApproxPair& p, const Rat& kappa,
                                        size_t lo, size_t hi) {
    if (!p.x) raise("BadArgument", "norms need an attached pair");
    long a = 0, b = 0;
    check_kappa(kappa, a, b);
    if (lo > hi || hi > p.denoms.size())
        raise("IndexOutOfRange", "norm range exceeds the sequence length");
    unsigned bits = std::max(p.precisionBits, 64u);
    std::vector<Interval> out;
    out.reserve(hi - lo);
    for (size_t i = lo; i < hi; ++i) {
        Interval s = graded_weight(p.denoms[i], a, b, bits) * abs_i(p.errors[i]);
        // |n|_kappa = s^(1/kappa) = s^(b/a)
        out.push_back(kth_root_i(pow_i(s, b), static_cast<unsigned>(a), bits));
    }
    return out;
}

Verdict symmetric_verdict(const ApproxPair& p, size_t depth, const Rat& bound) {
    return symmetric_verdict_graded(p, Rat(2), depth, bound);
}

Verdict symmetric_verdict_graded(const ApproxPair& p, const Rat& kappa, size_t depth,
                                 const Rat& bound) {
    if (!p.x) raise("BadArgument", "verdict needs an attached pair");
    if (depth == 0) raise("BadArgument", "verdict needs a positive depth");
    if (bound < 1) raise("BadArgument", "band ratio bound must be at least 1");
    long a = 0, b = 0;
    check_kappa(kappa, a, b);
    size_t d = std::min(depth, p.denoms.size());
    if (d == 0) return Verdict{VerdictValue::UNDECIDED, 0, "empty pair carries no evidence"};
    size_t tail = d / 2 + 1;  // 1-based, matching the membership convention

    auto sval = [&](size_t i, unsigned bb) {
        return graded_weight(p.denoms[i - 1], a, b, bb) *
               abs_i(pair_error_at(p, i - 1, bb));
    };

    bool allZero = true;
    for (size_t i = tail; i <= d && allZero; ++i) {
        Interval s = sval(i, std::max(p.precisionBits, 64u));
        allZero = s.is_point() && s.lo == 0;
    }
    if (allZero)
        return Verdict{VerdictValue::LESS, d,
                       "products vanish identically across the tail half"};

    Cert band = detail::decide_cert([&](unsigned bb) -> Cert {
        bool first = true;
        Rat maxHi, maxLo, minHi, minLo;
        for (size_t i = tail; i <= d; ++i) {
            Interval s = sval(i, bb);
            if (first) {
                maxHi = s.hi, maxLo = s.lo, minHi = s.hi, minLo = s.lo;
                first = false;
            } else {
                maxHi = std::max(maxHi, s.hi);
                maxLo = std::max(maxLo, s.lo);
                minHi = std::min(minHi, s.hi);
                minLo = std::min(minLo, s.lo);
            }
        }
        if (maxHi <= bound * minLo) return Cert::Yes;
        if (maxLo > bound * minHi) return Cert::No;
        return Cert::Unknown;
    });
    if (band == Cert::Yes)
        return Verdict{VerdictValue::EQUIVALENT, d,
                       "products certified inside one band across the tail half"};
    if (detail::tail_escape(sval, tail, d, true) == Cert::Yes)
        return Verdict{VerdictValue::LESS, d,
                       "products escape to zero across the tail half"};
    if (detail::tail_escape(sval, tail, d, false) == Cert::Yes)
        return Verdict{VerdictValue::GREATER, d,
                       "products escape upward across the tail half"};
    return Verdict{VerdictValue::UNDECIDED, d,
                   "band and escape certificates all undecided"};
}

GoldenErrorCert golden_error_test(const Int& N, unsigned n) {
    if (N < 1) raise("BadArgument", "golden error test needs N >= 1");
    if (n < 1) raise("BadArgument", "golden error test needs n >= 1");
    // Everything lives in (Z + Z*sqrt5)/2, so the whole comparison runs on
    // integers: 2*||N*phi|| = Ae + Be*sqrt5 and 2*phi^-n = At + Bt*sqrt5
    // with At = (-1)^n L_n, Bt = -(-1)^n F_n.
    Int t = isqrt_floor(5 * N * N);  // floor(N*sqrt5)
    Int m = (N + 1 + t) / 2;         // nearest integer to N*phi (never a tie)
    Int Ae = N - 2 * m, Be = N;
    if (sign_z5(Ae, Be) < 0) {
        Ae = -Ae;
        Be = -Be;
    }
    Int F = 1, L = 1;  // F_n, L_n from n = 1
    for (unsigned i = 1; i < n; ++i) {
        Int f = (F + L) / 2, l = (5 * F + L) / 2;
        F = f;
        L = l;
    }
    Int At = n % 2 == 0 ? L : Int(-L);
    Int Bt = n % 2 == 0 ? Int(-F) : F;
    bool direct = sign_z5(At - Ae, Bt - Be) > 0;  // strict: ||F_n*phi|| = phi^-n fails

    GoldenErrorCert cert;
    cert.zeck = zeckendorf(N);
    const auto& ix = cert.zeck.indices;
    bool crit = ix.front() >= n + 1;
    if (!crit && ix.front() == n && ix.size() >= 2) {
        unsigned gap = ix[1] - ix[0];
        crit = gap >= 3 && gap % 2 == 1;
    }
    if (crit != direct)
        raise("CriterionMismatch",
              "index criterion and exact comparison disagree at N=" + to_string(N) +
                  ", n=" + std::to_string(n));
    cert.holds = crit;
    cert.distance = z5_half_enclose(Ae, Be);
    cert.threshold = z5_half_enclose(At, Bt);
    return cert;
}

Verdict golden_symmetric_verdict(const std::vector<Int>& seq, size_t depth,
                                 const Rat& bound) {
    if (depth == 0) raise("BadArgument", "verdict needs a positive depth");
    size_t d = std::min(depth, seq.size());
    if (d < 2) return Verdict{VerdictValue::UNDECIDED, d, "window too short to split"};
    for (size_t i = 0; i < d; ++i)
        if (seq[i] < 1) raise("BadArgument", "sequence entries must be positive");

    std::vector<unsigned> z;
    z.reserve(d);
    for (size_t i = 0; i < d; ++i) z.push_back(zeckendorf(seq[i]).zdeg());
    size_t tail = d / 2;
    unsigned headMax = 0, tailMax = 0;
    for (size_t i = 0; i < tail; ++i) headMax = std::max(headMax, z[i]);
    for (size_t i = tail; i < d; ++i) tailMax = std::max(tailMax, z[i]);
    bool rising = true;
    for (size_t i = tail; i + 1 < d; ++i) rising &= z[i] < z[i + 1];

    VerdictValue zv = VerdictValue::UNDECIDED;
    if (tailMax <= headMax)
        zv = VerdictValue::EQUIVALENT;
    else if (rising && z[d - 1] >= z[tail] + 2)
        zv = VerdictValue::GREATER;

    RealPtr phi = make_surd(Rat(1, 2), Rat(1, 2), Int(5));
    ApproxPair p = attach(phi, std::vector<Int>(seq.begin(), seq.begin() + d), 192);
    Verdict pv = symmetric_verdict(p, d, bound);

    if (zv == pv.value && zv == VerdictValue::EQUIVALENT)
        return Verdict{zv, d,
                       "zeckendorf degrees bounded (tail max " + std::to_string(tailMax) +
                           " vs head max " + std::to_string(headMax) +
                           ") and pairing products banded"};
    if (zv == pv.value && zv == VerdictValue::GREATER)
        return Verdict{zv, d, "zeckendorf degrees and pairing products both escape upward"};
    return Verdict{VerdictValue::UNDECIDED, d,
                   std::string("readings disagree or are undecided: degrees say ") +
                       to_string(zv) + ", pairing says " + to_string(pv.value)};
}

namespace {

// Scan context for one source at working precision b: a rational source is
// carried exactly as p/q, anything else as the dyadic window [lo, hi] / 2^b.
// Every per-n quantity below is then pure integer work over a denominator
// shared by the whole sweep, and rational sources keep their exact zeros, so
// a revisited zero minimum certifies No instead of escalating forever.
struct FactorCtx {
    bool exact = false;
    Int p, q;    // exact: value = p/q with q >= 1
    Int lo, hi;  // dyadic: value in [lo, hi] / 2^b
    unsigned b = 0;
};

FactorCtx make_ctx(const RealPtr& r, unsigned b) {
    FactorCtx c;
    c.b = b;
    if (auto pq = r->exact_rational()) {
        c.exact = true;
        c.p = num(*pq);
        c.q = den(*pq);
    } else {
        Interval e = r->enclose(b);
        Rat s = pow2(static_cast<long>(b));
        c.lo = floor_rat(e.lo * s);
        c.hi = ceil_rat(e.hi * s);
    }
    return c;
}

// Distance from n * value to the nearest integer as a window [lo, hi] / den.
// The tent t -> min(t - floor t, ceil t - t) runs on integer residues only.
struct DistWin {
    Int lo, hi, den;
};

DistWin dist_win(const FactorCtx& c, const Int& n) {
    if (c.exact) {
        Int r = (n * c.p) % c.q;
        if (r < 0) r += c.q;
        Int d = std::min(r, Int(c.q - r));
        return DistWin{d, d, c.q};
    }
    Int one = Int(1) << c.b;
    Int P = n * c.lo, Q = n * c.hi;  // n * value lies in [P, Q] / one
    Int k = P >= 0 ? Int(P >> c.b) : Int(-((-P + one - 1) >> c.b));
    Int rlo = P - k * one, rhi = Q - k * one;  // 0 <= rlo < one
    if (rhi >= 2 * one) return DistWin{Int(0), Int(one >> 1), one};
    auto tent = [&](const Int& t) {
        Int u = t >= one ? Int(t - one) : t;
        return 2 * u <= one ? u : Int(one - u);
    };
    bool hitsInt = rlo == 0 || (rlo <= one && one <= rhi);
    bool hitsHalf = (2 * rlo <= one && one <= 2 * rhi) ||
                    (2 * rlo <= 3 * one && 3 * one <= 2 * rhi);
    Int dlo = hitsInt ? Int(0) : std::min(tent(rlo), tent(rhi));
    Int dhi = hitsHalf ? Int(one >> 1) : std::max(tent(rlo), tent(rhi));
    return DistWin{dlo, dhi, one};
}

// Window of v(n) = n * dist_x * dist_y over the shared denominator
// dx.den * dy.den, so improvement tests at one precision are plain integer
// comparisons with no rational normalization.
struct RowVals {
    DistWin dx, dy;
    Int vlo, vhi;
};

RowVals row_vals(const FactorCtx& cx, const FactorCtx& cy, const Int& n) {
    RowVals r;
    r.dx = dist_win(cx, n);
    r.dy = dist_win(cy, n);
    r.vlo = n * r.dx.lo * r.dy.lo;
    r.vhi = n * r.dx.hi * r.dy.hi;
    return r;
}

LittlewoodRow make_row(const Int& n, const RowVals& s) {
    Interval dx(Rat(s.dx.lo, s.dx.den), Rat(s.dx.hi, s.dx.den));
    Interval dy(Rat(s.dy.lo, s.dy.den), Rat(s.dy.hi, s.dy.den));
    Int D = s.dx.den * s.dy.den;
    Interval v(Rat(s.vlo, D), Rat(s.vhi, D));
    return LittlewoodRow{n, dx, dy, v, v.hi};
}

// Decide v(n) < v(m) under escalation.  Exact value ties come out No at the
// base precision (point windows compare), so only genuine near-ties escalate,
// rebuilding both rows at the same doubled precision; one that survives the
// cap is reported, not guessed.
Cert less_at(const RealPtr& x, const RealPtr& y, const Int& n, const Int& m,
             const RowVals& rn0, const RowVals& rm0, unsigned b0) {
    const RowVals* rn = &rn0;
    const RowVals* rm = &rm0;
    RowVals sn, sm;
    unsigned bb = b0;
    for (;;) {
        if (rn->vhi < rm->vlo) return Cert::Yes;
        if (rn->vlo >= rm->vhi) return Cert::No;
        if (bb >= precision_cap())
            raise("PrecisionExhausted",
                  "minimum comparison unresolved at the precision cap near n=" + to_string(n));
        bb *= 2;
        FactorCtx cx = make_ctx(x, bb), cy = make_ctx(y, bb);
        sn = row_vals(cx, cy, n);
        sm = row_vals(cx, cy, m);
        rn = &sn;
        rm = &sm;
    }
}

}  // namespace

LittlewoodPartial littlewood_scan_range(const RealPtr& x, const RealPtr& y,
                                        const Int& lo, const Int& hi, unsigned bits) {
    if (!x || !y) raise("BadArgument", "scan needs two real sources");
    if (lo < 1 || hi < lo) raise("BadArgument", "scan range must satisfy 1 <= lo <= hi");
    unsigned b0 = std::max(bits, 64u);
    FactorCtx cx = make_ctx(x, b0), cy = make_ctx(y, b0);
    LittlewoodPartial part;
    part.lo = lo;
    part.hi = hi;
    RowVals cur;
    Int curN = 0;
    for (Int n = lo; n <= hi; ++n) {
        RowVals s = row_vals(cx, cy, n);
        if (curN != 0 && less_at(x, y, n, curN, s, cur, b0) != Cert::Yes) continue;
        part.rows.push_back(make_row(n, s));
        cur = s;
        curN = n;
    }
    part.argmin = curN;
    part.minValue = part.rows.back().product;
    return part;
}

LittlewoodResult littlewood_merge(const RealPtr& x, const RealPtr& y,
                                  std::vector<LittlewoodPartial> parts, unsigned bits) {
    if (!x || !y) raise("BadArgument", "merge needs two real sources");
    if (parts.empty()) raise("BadArgument", "merge needs at least one partial scan");
    std::sort(parts.begin(), parts.end(),
              [](const LittlewoodPartial& p, const LittlewoodPartial& q) { return p.lo < q.lo; });
    if (parts.front().lo != 1)
        raise("BadArgument", "partial scans must start at n = 1");
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i + 1].lo != parts[i].hi + 1)
            raise("BadArgument", "partial scans must tile the range without gaps or overlap");

    // Every candidate is recomputed at the base precision, so the report
    // depends only on which n the partials kept, never on how hard some
    // partial had to escalate to separate a near-tie.
    unsigned b0 = std::max(bits, 64u);
    FactorCtx cx = make_ctx(x, b0), cy = make_ctx(y, b0);
    LittlewoodResult out;
    RowVals cur;
    Int curN = 0;
    for (const LittlewoodPartial& part : parts) {
        for (const LittlewoodRow& row : part.rows) {
            RowVals s = row_vals(cx, cy, row.n);
            if (curN != 0 && less_at(x, y, row.n, curN, s, cur, b0) != Cert::Yes)
                continue;
            out.trace.push_back(make_row(row.n, s));
            cur = s;
            curN = row.n;
        }
    }
    out.argmin = curN;
    out.minValue = out.trace.back().product;
    return out;
}

LittlewoodResult littlewood_scan(const RealPtr& x, const RealPtr& y, const Int& limit,
                                 unsigned bits) {
    if (limit < 2) raise("BadArgument", "scan limit must be at least 2");
    std::vector<LittlewoodPartial> parts;
    parts.push_back(littlewood_scan_range(x, y, Int(1), limit, bits));
    return littlewood_merge(x, y, std::move(parts), bits);
}

}  // namespace ideoarith
