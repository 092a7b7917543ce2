#include "ideoarith/reals.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>

#include "ideoarith/error.hpp"
#include "ideoarith/roots.hpp"

namespace ideoarith {

namespace {

std::atomic<unsigned> g_precision_cap{4096};

int sgn_rat(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Trial division is a complete squarefreeness test for D <= 10^12: after
// removing all prime factors below 10^6 the cofactor is 1 or prime.
void check_squarefree_radicand(const Int& D) {
    if (D <= 1) raise("NonSquarefreeD", "radicand must be an integer greater than 1");
    if (D > Int("1000000000000"))
        raise("MalformedSpec", "radicand too large to certify squarefree");
    Int m = D;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        m /= p;
        if (m % p == 0) raise("NonSquarefreeD", "radicand " + D.str() + " is divisible by " + p.str() + "^2");
    }
}

std::string rat_text(const Rat& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

}  // namespace

unsigned precision_cap() { return g_precision_cap.load(); }

void set_precision_cap(unsigned bits) {
    if (bits < 64) bits = 64;
    g_precision_cap.store(bits);
}

// ---------------------------------------------------------------------------
// Surd

int Surd::sign() const {
    int su = sgn_rat(u), sv = sgn_rat(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Opposite signs: |u| vs |v|*sqrt(D) decides, via squares.
    return su * sgn_rat(u * u - v * v * Rat(D));
}

Int Surd::floor_int() const {
    if (v == 0) return floor_rat(u);
    Interval box = enclose(8);
    Int t = floor_rat(box.lo);
    while ((*this - Rat(t + 1)).sign() >= 0) ++t;
    while ((*this - Rat(t)).sign() < 0) --t;
    return t;
}

Interval Surd::enclose(unsigned bits) const {
    if (v == 0) return Interval(u);
    unsigned pad = 4;
    Rat av = abs_rat(v);
    if (av > 1) pad += static_cast<unsigned>(floor_log2(av)) + 1;
    Interval root = sqrt_i(Interval(Rat(D)), bits + pad);
    return Interval(u) + Interval(v) * root;
}

Surd operator+(const Surd& a, const Surd& b) {
    if (a.v != 0 && b.v != 0 && a.D != b.D) raise("MixedRadicand", "surd arithmetic across different radicands");
    return Surd(a.u + b.u, a.v + b.v, a.v != 0 ? a.D : b.D);
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

Surd operator-(const Surd& a) { return Surd(-a.u, -a.v, a.D); }

Surd operator*(const Surd& a, const Surd& b) {
    if (a.v != 0 && b.v != 0 && a.D != b.D) raise("MixedRadicand", "surd arithmetic across different radicands");
    Int D = a.v != 0 ? a.D : b.D;
    return Surd(a.u * b.u + a.v * b.v * Rat(D), a.u * b.v + a.v * b.u, D);
}

Surd operator/(const Surd& a, const Surd& b) {
    if (b.sign() == 0) raise("DivisionByZero", "surd division by zero");
    if (a.v != 0 && b.v != 0 && a.D != b.D) raise("MixedRadicand", "surd arithmetic across different radicands");
    Rat n = b.norm();  // b * conj(b); nonzero since b != 0
    Surd scaled = a * b.conj();
    return Surd(scaled.u / n, scaled.v / n, scaled.D);
}

Surd operator+(const Surd& a, const Rat& r) { return Surd(a.u + r, a.v, a.D); }
Surd operator-(const Surd& a, const Rat& r) { return Surd(a.u - r, a.v, a.D); }
Surd operator*(const Surd& a, const Rat& r) { return Surd(a.u * r, a.v * r, a.D); }

bool operator==(const Surd& a, const Surd& b) { return (a - b).sign() == 0; }

// ---------------------------------------------------------------------------
// Sources

namespace {

class RationalSource final : public RealSource {
public:
    explicit RationalSource(Rat v) : value_(std::move(v)) {
        Rat x = value_;
        for (;;) {
            Int f = floor_rat(x);
            quots_.push_back(f);
            Rat frac = x - Rat(f);
            if (frac == 0) break;
            x = Rat(1) / frac;  // > 1, so interior quotients are >= 1 and the last is >= 2
        }
    }

    Interval enclose(unsigned) const override { return Interval(value_); }

    std::vector<Int> quotients(size_t count) const override {
        size_t n = std::min(count, quots_.size());
        return std::vector<Int>(quots_.begin(), quots_.begin() + n);
    }

    std::string describe() const override {
        return "rational:" + num(value_).str() + "/" + den(value_).str();
    }

    std::optional<Rat> exact_rational() const override { return value_; }

    std::optional<Surd> tail_surd(size_t n) const override {
        if (n >= quots_.size()) return std::nullopt;
        Rat t(quots_.back());
        for (size_t i = quots_.size() - 1; i-- > n;) t = Rat(quots_[i]) + Rat(1) / t;
        return Surd(t, 0, 2);
    }

private:
    Rat value_;
    std::vector<Int> quots_;
};

class SurdSource final : public RealSource {
public:
    explicit SurdSource(Surd v) : value_(std::move(v)) { tails_.push_back(value_); }

    Interval enclose(unsigned bits) const override { return value_.enclose(bits); }

    std::vector<Int> quotients(size_t count) const override {
        std::lock_guard<std::mutex> lk(mu_);
        ensure(count);
        return std::vector<Int>(quots_.begin(), quots_.begin() + count);
    }

    std::string describe() const override {
        // Normalized integer spelling (a + b sqrt(D)) / c with c > 0 and
        // gcd(a, b, c) = 1.
        Int c = lcm(den(value_.u), den(value_.v));
        Int a = num(value_.u) * (c / den(value_.u));
        Int b = num(value_.v) * (c / den(value_.v));
        Int g = gcd(gcd(abs(a), abs(b)), c);
        a /= g; b /= g; c /= g;
        std::string mid = b < 0 ? "-" : "+";
        return "surd:(" + a.str() + mid + Int(abs(b)).str() + "\xE2\x88\x9A" + value_.D.str() +
               ")/" + c.str();
    }

    std::optional<Surd> exact_surd() const override { return value_; }

    std::optional<Surd> tail_surd(size_t n) const override {
        std::lock_guard<std::mutex> lk(mu_);
        ensure(n);
        return tails_[n];
    }

private:
    // Complete quotients of a quadratic irrational cycle through finitely
    // many values, so the exact iteration does not blow up.
    void ensure(size_t k) const {
        while (quots_.size() < k) {
            Surd cur = tails_.back();
            Int a = cur.floor_int();
            quots_.push_back(a);
            tails_.push_back(Surd(Rat(1), Rat(0), cur.D) / (cur - Rat(a)));
        }
    }

    Surd value_;
    mutable std::mutex mu_;
    mutable std::vector<Int> quots_;
    mutable std::vector<Surd> tails_;  // tails_[k] = theta_k
};

// Quotient generators for the stream-driven sources.  next() is called with
// the index to produce and the convergent denominators accumulated so far
// (q_{i-1}, q_{i-2}); nullopt ends the stream (rational value).
class QuotientRule {
public:
    virtual ~QuotientRule() = default;
    virtual std::optional<Int> next(size_t i, const Int& q1, const Int& q2) = 0;
    virtual std::string name() const = 0;
    virtual bool finite() const { return false; }
};

class PeriodicRule final : public QuotientRule {
public:
    PeriodicRule(std::vector<Int> pre, std::vector<Int> cycle)
        : pre_(std::move(pre)), cycle_(std::move(cycle)) {
        if (pre_.empty()) raise("MalformedSpec", "quotient stream needs at least one leading term");
        for (size_t i = 1; i < pre_.size(); ++i)
            if (pre_[i] < 1) raise("MalformedSpec", "partial quotients after the first must be positive");
        for (const Int& a : cycle_)
            if (a < 1) raise("MalformedSpec", "cycle quotients must be positive");
    }

    std::optional<Int> next(size_t i, const Int&, const Int&) override {
        if (i < pre_.size()) return pre_[i];
        if (cycle_.empty()) return std::nullopt;
        return cycle_[(i - pre_.size()) % cycle_.size()];
    }

    std::string name() const override {
        auto join = [](const std::vector<Int>& v) {
            std::string s;
            for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
            return s;
        };
        return "stream:periodic:" + join(pre_) + ";" + join(cycle_);
    }

    bool finite() const override { return cycle_.empty(); }

private:
    std::vector<Int> pre_, cycle_;
};

class ERule final : public QuotientRule {
public:
    std::optional<Int> next(size_t i, const Int&, const Int&) override {
        if (i == 0) return Int(2);
        if (i % 3 == 2) return Int(2 * (i / 3 + 1));
        return Int(1);
    }
    std::string name() const override { return "stream:e"; }
};

class FactorialRule final : public QuotientRule {
public:
    std::optional<Int> next(size_t i, const Int&, const Int&) override {
        if (i > 0) fact_ *= Int(i);
        return fact_;
    }
    std::string name() const override { return "stream:factorial"; }

private:
    Int fact_{1};
};

// a_0 = a_1 = 1, then a_{n+1} = q_n^(n-1); quotient sizes explode, so the
// stream is capped at a desk depth and refuses to go deeper.  The cap keeps
// the largest exact power below a megabit.
class LiouvilleResoluteRule final : public QuotientRule {
public:
    static constexpr size_t kCap = 10;
    std::optional<Int> next(size_t i, const Int& q1, const Int&) override {
        if (i <= 1) return Int(1);
        if (i > kCap)
            raise("PrecisionExhausted", "liouville-resolute quotients beyond index " +
                                            std::to_string(kCap) + " exceed desk scale");
        return pow_int(q1, static_cast<unsigned>(i - 2));
    }
    std::string name() const override { return "liouville-resolute"; }
};

// a_0 = 1, a_n = q_{n-1}^n for even n, 1 for odd n.
class LiouvilleIrresoluteRule final : public QuotientRule {
public:
    static constexpr size_t kCap = 12;
    std::optional<Int> next(size_t i, const Int& q1, const Int&) override {
        if (i == 0 || i % 2 == 1) return Int(1);
        if (i > kCap)
            raise("PrecisionExhausted", "liouville-irresolute quotients beyond index " +
                                            std::to_string(kCap) + " exceed desk scale");
        return pow_int(q1, static_cast<unsigned>(i));
    }
    std::string name() const override { return "liouville-irresolute"; }
};

class BlockPairRule final : public QuotientRule {
public:
    BlockPairRule(const BlockPairSeed& seed, char side) : seed_(seed), side_(side) {}

    std::optional<Int> next(size_t i, const Int&, const Int&) override {
        if (i >= buf_.size()) {
            BlockPairData d = blockpair_quotients(seed_, std::max<size_t>(2 * (i + 1), 64));
            buf_ = side_ == 'A' ? std::move(d.quots_a) : std::move(d.quots_b);
        }
        return buf_[i];
    }

    std::string name() const override {
        std::string s = "blockpair:" + std::to_string(seed_.seed);
        if (side_ == 'B') s += "#B";
        return s;
    }

private:
    BlockPairSeed seed_;
    char side_;
    std::vector<Int> buf_;
};

class StreamSource final : public RealSource {
public:
    explicit StreamSource(std::unique_ptr<QuotientRule> rule) : rule_(std::move(rule)) {
        name_ = rule_->name();
        if (rule_->finite())
            while (!done_) step();  // terminating streams have an exact value
    }

    Interval enclose(unsigned bits) const override {
        std::lock_guard<std::mutex> lk(mu_);
        Int threshold = Int(1) << bits;
        while (!done_ && (conv_.size() < 2 ||
                          conv_.back().second * conv_[conv_.size() - 2].second < threshold))
            step();
        if (done_) return Interval(Rat(conv_.back().first, conv_.back().second));
        // Consecutive convergents bracket the value; the gap is 1/(q_k q_{k-1}).
        // Use the earliest adequate pair, not the cache frontier: endpoint
        // rationals must stay no larger than the precision asks for, or they
        // poison every downstream operation with huge denominators.
        size_t k = 1;
        while (conv_[k].second * conv_[k - 1].second < threshold) ++k;
        Rat a(conv_[k].first, conv_[k].second);
        Rat b(conv_[k - 1].first, conv_[k - 1].second);
        return a < b ? Interval(a, b) : Interval(b, a);
    }

    std::vector<Int> quotients(size_t count) const override {
        std::lock_guard<std::mutex> lk(mu_);
        while (!done_ && quots_.size() < count) step();
        size_t n = std::min(count, quots_.size());
        return std::vector<Int>(quots_.begin(), quots_.begin() + n);
    }

    std::string describe() const override { return name_; }

    std::optional<Rat> exact_rational() const override {
        std::lock_guard<std::mutex> lk(mu_);
        if (!done_) return std::nullopt;
        return Rat(conv_.back().first, conv_.back().second);
    }

private:
    void step() const {
        Int q1 = conv_.empty() ? Int(0) : conv_.back().second;
        Int q2 = conv_.size() >= 2 ? conv_[conv_.size() - 2].second : Int(0);
        std::optional<Int> a = rule_->next(quots_.size(), q1, q2);
        if (!a) {
            done_ = true;
            return;
        }
        quots_.push_back(*a);
        if (conv_.empty()) {
            conv_.emplace_back(*a, Int(1));
        } else {
            Int p2 = conv_.size() >= 2 ? conv_[conv_.size() - 2].first : Int(1);
            Int pn = *a * conv_.back().first + p2;
            Int qn = *a * conv_.back().second + q2;
            conv_.emplace_back(std::move(pn), std::move(qn));
        }
    }

    std::unique_ptr<QuotientRule> rule_;
    std::string name_;
    mutable std::mutex mu_;
    mutable std::vector<Int> quots_;
    mutable std::vector<std::pair<Int, Int>> conv_;  // full (p_i, q_i) ladder
    mutable bool done_ = false;
};

// Shared quotient extraction for sources defined by a value enclosure:
// certified floors peel off quotients, precision doubles when a floor is
// ambiguous.  Irrational sources always make progress; a value with an
// exactly-integer tail would stay ambiguous forever, which is what the
// PrecisionExhausted message reports.
std::vector<Int> quotients_by_refinement(const std::function<Interval(unsigned)>& refine,
                                         size_t count, const std::string& who) {
    for (unsigned bits = std::min(256u, precision_cap());; bits *= 2) {
        if (bits > precision_cap())
            raise("PrecisionExhausted",
                  who + ": quotient extraction exceeded the precision cap; " +
                      "the remaining tail may be exactly an integer");
        Interval j = refine(bits);
        std::vector<Int> out;
        bool ok = true;
        while (out.size() < count) {
            Int flo = floor_rat(j.lo), fhi = floor_rat(j.hi);
            if (flo != fhi) { ok = false; break; }
            out.push_back(flo);
            j = j - Interval(Rat(flo));
            if (j.lo == 0 && j.hi == 0) return out;  // expansion terminates
            if (j.lo <= 0) { ok = false; break; }
            j = Interval(Rat(1)) / j;
        }
        if (ok) return out;
    }
}

class AlgebraicSource final : public RealSource {
public:
    AlgebraicSource(IntPoly f, Rat lo, Rat hi)
        : f_(std::move(f)), df_(derivative(f_)), lo_(std::move(lo)), hi_(std::move(hi)) {
        slo_ = sgn_rat(eval_rat(f_, lo_));
        // Endpoints are non-roots: an irreducible polynomial of degree >= 2
        // has no rational roots.
    }

    Interval enclose(unsigned bits) const override {
        std::lock_guard<std::mutex> lk(mu_);
        refine(bits);
        return Interval(lo_, hi_);
    }

    std::vector<Int> quotients(size_t count) const override {
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (cached_quots_.size() >= count)
                return std::vector<Int>(cached_quots_.begin(), cached_quots_.begin() + count);
        }
        auto out = quotients_by_refinement([this](unsigned b) { return enclose(b); }, count,
                                           describe());
        std::lock_guard<std::mutex> lk(mu_);
        if (out.size() > cached_quots_.size()) cached_quots_ = out;
        return out;
    }

    std::string describe() const override {
        return "alg:" + poly_text(f_) + "@[" + rat_text(lo_) + "," + rat_text(hi_) + "]";
    }

private:
    // Shrink the cached bracket, keeping opposite signs at the endpoints.
    // Interval Newton around the midpoint gives quadratic contraction once
    // the derivative enclosure clears zero; sign bisection covers the rest.
    // Endpoints are rounded outward onto a grid 16 bits below the target so
    // their exact representations stay bounded; the width check still leaves
    // 2^16 grid cells, which keeps rounded midpoints interior.
    void refine(unsigned bits) const {
        Rat target = pow2(-static_cast<long>(bits));
        unsigned grid = bits + 16;
        while (hi_ - lo_ > target) {
            Rat m = dyadic_floor((lo_ + hi_) / 2, grid);
            Rat fm = eval_rat(f_, m);
            if (fm == 0) raise("ReducibleMinpoly", "exact rational root hit during refinement");
            bool shrunk = false;
            Interval dfe = eval_interval(df_, Interval(lo_, hi_));
            if (!dfe.contains_zero()) {
                Interval cand = Interval(m) - Interval(fm) / dfe;
                Rat nlo = std::max(lo_, dyadic_floor(std::max(lo_, cand.lo), grid));
                Rat nhi = std::min(hi_, dyadic_ceil(std::min(hi_, cand.hi), grid));
                if (nlo <= nhi && (nhi - nlo) < (hi_ - lo_) * Rat(3, 4)) {
                    // Re-certify signs; fall back to bisection when an
                    // endpoint sign degenerates.
                    int sa = sgn_rat(eval_rat(f_, nlo)), sb = sgn_rat(eval_rat(f_, nhi));
                    if (sa != 0 && sb != 0 && sa != sb) {
                        lo_ = nlo; hi_ = nhi; slo_ = sa;
                        shrunk = true;
                    }
                }
            }
            if (!shrunk) {
                int sm = sgn_rat(fm);
                if (sm == slo_) lo_ = m; else hi_ = m;
            }
        }
    }

    IntPoly f_, df_;
    mutable std::mutex mu_;
    mutable Rat lo_, hi_;
    mutable int slo_;
    mutable std::vector<Int> cached_quots_;
};

// L(m) = sum_j m^-(j+1)!.  Partial sums plus the tail bound 2 m^-(k+2)!
// give nested enclosures with doubly-factorial convergence.
class SeriesSource final : public RealSource {
public:
    explicit SeriesSource(Int m) : m_(std::move(m)) {
        if (m_ < 2) raise("MalformedSpec", "liouville-series base must be at least 2");
    }

    Interval enclose(unsigned bits) const override {
        Rat sum = 0;
        Int fact = 1;  // (j+1)! while summing term j
        unsigned lg = static_cast<unsigned>(floor_log2(Rat(m_)));  // >= 1
        for (size_t j = 0;; ++j) {
            fact *= Int(j + 1);
            sum += Rat(1) / Rat(pow_int(m_, static_cast<unsigned>(fact)));
            Int next = fact * Int(j + 2);
            // Tail after term j is below 2 m^-(j+2)!; stop once that is
            // within the requested width.
            if (next * lg >= Int(bits + 2)) {
                Rat tail = Rat(2) / Rat(pow_int(m_, static_cast<unsigned>(next)));
                return Interval(sum, sum + tail);
            }
        }
    }

    std::vector<Int> quotients(size_t count) const override {
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (cached_quots_.size() >= count)
                return std::vector<Int>(cached_quots_.begin(), cached_quots_.begin() + count);
        }
        auto out = quotients_by_refinement([this](unsigned b) { return enclose(b); }, count,
                                           describe());
        std::lock_guard<std::mutex> lk(mu_);
        if (out.size() > cached_quots_.size()) cached_quots_ = out;
        return out;
    }

    std::string describe() const override { return "liouville-series:" + m_.str(); }

private:
    Int m_;
    mutable std::mutex mu_;
    mutable std::vector<Int> cached_quots_;
};

// Value defined by interval arithmetic over other sources (products, sums,
// fractional-linear images that leave every exact field).  The evaluator may
// throw DivisorStraddlesZero at coarse precision; enclose retries finer.
class DerivedSource final : public RealSource {
public:
    DerivedSource(std::function<Interval(unsigned)> eval, std::string desc)
        : eval_(std::move(eval)), desc_(std::move(desc)) {}

    Interval enclose(unsigned bits) const override {
        Rat target = pow2(-static_cast<long>(bits));
        unsigned cap = precision_cap();
        for (unsigned b = bits + 16;; b *= 2) {
            bool straddle = false;
            Interval j;
            try {
                j = eval_(b);
            } catch (const IdeoError& e) {
                if (e.code() != "DivisorStraddlesZero") throw;
                straddle = true;
            }
            if (!straddle && j.hi - j.lo <= target) return compress(j, bits + 8);
            if (b > cap)
                raise("PrecisionExhausted", desc_ + ": enclosure exceeded the precision cap");
        }
    }

    std::vector<Int> quotients(size_t count) const override {
        {
            std::lock_guard<std::mutex> lk(mu_);
            if (cached_quots_.size() >= count)
                return std::vector<Int>(cached_quots_.begin(), cached_quots_.begin() + count);
        }
        auto out = quotients_by_refinement([this](unsigned b) { return enclose(b); }, count,
                                           describe());
        std::lock_guard<std::mutex> lk(mu_);
        if (out.size() > cached_quots_.size()) cached_quots_ = out;
        return out;
    }

    std::string describe() const override { return desc_; }

private:
    std::function<Interval(unsigned)> eval_;
    std::string desc_;
    mutable std::mutex mu_;
    mutable std::vector<Int> cached_quots_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories and the source grammar

RealPtr make_rational(const Rat& v) { return std::make_shared<RationalSource>(v); }

RealPtr make_surd(const Rat& u, const Rat& v, const Int& D) {
    check_squarefree_radicand(D);
    if (v == 0) return make_rational(u);
    return std::make_shared<SurdSource>(Surd(u, v, D));
}

RealPtr make_algebraic(const IntPoly& minpoly, const Rat& lo, const Rat& hi) {
    IntPoly f = primitive_part(minpoly);
    if (f.degree() < 1) raise("MalformedSpec", "minimal polynomial must have positive degree");
    if (lo >= hi) raise("MalformedSpec", "isolating interval must have positive width");
    if (f.degree() == 1) {
        Rat root = Rat(-f.c[0], f.c[1]);
        if (root <= lo || root >= hi) raise("MalformedSpec", "isolating interval misses the root");
        return make_rational(root);
    }
    if (!is_irreducible(f)) raise("ReducibleMinpoly", "polynomial factors over the rationals");
    if (eval_rat(f, lo) == 0 || eval_rat(f, hi) == 0 || count_real_roots(f, lo, hi) != 1)
        raise("MalformedSpec", "isolating interval must contain exactly one root");
    if (f.degree() == 2) {
        // Solve exactly: a quadratic root is a surd, which unlocks the exact
        // arithmetic paths.
        Rat a(f.c[2]), b(f.c[1]), c0(f.c[0]);
        Rat disc = b * b - 4 * a * c0;  // > 0: two real roots
        // root = -b/(2a) +- sqrt(disc)/(2a); split disc = s^2 * d with d squarefree
        Int dn = num(disc) * den(disc);  // disc = dn / den^2
        Int s = 1, d = 1;
        for (Int p = 2; p * p <= dn; ++p) {
            while (dn % (p * p) == 0) { dn /= p * p; s *= p; }
            if (dn % p == 0) { dn /= p; d *= p; }
        }
        d *= dn;
        if (d == 1) raise("ReducibleMinpoly", "discriminant is a perfect square");
        Rat vcoef = Rat(s, den(disc)) / (2 * a);
        Surd r1(-b / (2 * a), vcoef, d);
        Surd mid = r1 - Rat(lo);
        Surd hi_gap = r1 - Rat(hi);
        if (mid.sign() > 0 && hi_gap.sign() < 0) return std::make_shared<SurdSource>(r1);
        return std::make_shared<SurdSource>(r1.conj());
    }
    return std::make_shared<AlgebraicSource>(f, lo, hi);
}

RealPtr make_quotient_stream(std::vector<Int> preamble, std::vector<Int> cycle) {
    return std::make_shared<StreamSource>(
        std::make_unique<PeriodicRule>(std::move(preamble), std::move(cycle)));
}

RealPtr make_blockpair_side(const BlockPairSeed& seed, char side) {
    if (side != 'A' && side != 'B') raise("MalformedSpec", "blockpair side must be A or B");
    return std::make_shared<StreamSource>(std::make_unique<BlockPairRule>(seed, side));
}

namespace {

RealPtr derived_binary(const RealPtr& x, const RealPtr& y, char op,
                       const std::string& name) {
    auto eval = [x, y, op](unsigned b) {
        Interval a = x->enclose(b), c = y->enclose(b);
        switch (op) {
            case '*': return a * c;
            case '+': return a + c;
            default: return a - c;
        }
    };
    return std::make_shared<DerivedSource>(
        eval, name + "(" + x->describe() + "," + y->describe() + ")");
}

}  // namespace

RealPtr make_product(const RealPtr& x, const RealPtr& y) {
    auto rx = x->exact_rational(), ry = y->exact_rational();
    if (rx && ry) return make_rational(*rx * *ry);
    auto sx = x->exact_surd(), sy = y->exact_surd();
    if (rx) {
        if (*rx == 0) return make_rational(Rat(0));
        if (sy) {
            Surd p = *sy * *rx;
            return make_surd(p.u, p.v, p.D);
        }
    }
    if (ry) {
        if (*ry == 0) return make_rational(Rat(0));
        if (sx) {
            Surd p = *sx * *ry;
            return make_surd(p.u, p.v, p.D);
        }
    }
    if (sx && sy) {
        if (sx->D == sy->D) {
            Surd p = *sx * *sy;
            return make_surd(p.u, p.v, p.D);
        }
        if (sx->u == 0 && sy->u == 0) {
            // b1*sqrt(D1) * b2*sqrt(D2) = b1*b2*g * sqrt((D1/g)(D2/g)), which
            // stays squarefree because the cofactors are coprime.
            Int g = boost::multiprecision::gcd(sx->D, sy->D);
            Int Dp = (sx->D / g) * (sy->D / g);
            Rat coeff = sx->v * sy->v * Rat(g);
            if (Dp == 1) return make_rational(coeff);
            return std::make_shared<SurdSource>(Surd(Rat(0), coeff, Dp));
        }
    }
    return derived_binary(x, y, '*', "product");
}

RealPtr make_sum(const RealPtr& x, const RealPtr& y) {
    auto rx = x->exact_rational(), ry = y->exact_rational();
    if (rx && ry) return make_rational(*rx + *ry);
    auto sx = x->exact_surd(), sy = y->exact_surd();
    if (rx && sy) return make_surd(sy->u + *rx, sy->v, sy->D);
    if (ry && sx) return make_surd(sx->u + *ry, sx->v, sx->D);
    if (sx && sy && sx->D == sy->D) {
        Surd s = *sx + *sy;
        return make_surd(s.u, s.v, s.D);
    }
    return derived_binary(x, y, '+', "sum");
}

RealPtr make_difference(const RealPtr& x, const RealPtr& y) {
    auto rx = x->exact_rational(), ry = y->exact_rational();
    if (rx && ry) return make_rational(*rx - *ry);
    auto sx = x->exact_surd(), sy = y->exact_surd();
    if (rx && sy) return make_surd(*rx - sy->u, -sy->v, sy->D);
    if (ry && sx) return make_surd(sx->u - *ry, sx->v, sx->D);
    if (sx && sy && sx->D == sy->D) {
        Surd s = *sx - *sy;
        return make_surd(s.u, s.v, s.D);
    }
    return derived_binary(x, y, '-', "difference");
}

RealPtr make_moebius(const RealPtr& x, const Int& a, const Int& b, const Int& c,
                     const Int& d) {
    if (a * d - b * c == 0) raise("BadArgument", "singular coefficient matrix");
    if (auto r = x->exact_rational()) {
        Rat dn = Rat(c) * *r + Rat(d);
        if (dn == 0) raise("PoleHit", "the map has a pole at the source value");
        return make_rational((Rat(a) * *r + Rat(b)) / dn);
    }
    if (auto s = x->exact_surd()) {
        Surd nm = *s * Rat(a) + Rat(b);
        Surd dn = *s * Rat(c) + Rat(d);
        if (dn.sign() == 0) raise("PoleHit", "the map has a pole at the source value");
        Surd q = nm / dn;
        return make_surd(q.u, q.v, q.D);
    }
    auto eval = [x, a, b, c, d](unsigned bits) {
        Interval j = x->enclose(bits);
        Interval nm = Interval(Rat(a)) * j + Interval(Rat(b));
        Interval dn = Interval(Rat(c)) * j + Interval(Rat(d));
        return nm / dn;  // DivisorStraddlesZero retried finer by the wrapper
    };
    std::string desc = "moebius(" + a.str() + "," + b.str() + "," + c.str() + "," +
                       d.str() + ";" + x->describe() + ")";
    return std::make_shared<DerivedSource>(eval, desc);
}

RealPtr make_reciprocal(const RealPtr& x) {
    if (auto r = x->exact_rational())
        if (*r == 0) raise("ZeroTheta", "reciprocal of zero");
    return make_moebius(x, Int(0), Int(1), Int(1), Int(0));
}

namespace {

Rat parse_rat_text(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q <= 0) raise("MalformedSpec", "denominator must be positive");
        return Rat(p, q);
    } catch (const IdeoError&) {
        throw;
    } catch (...) {
        raise("MalformedSpec", "unreadable rational '" + s + "'");
    }
}

Int parse_int_text(const std::string& s) {
    try {
        return Int(s);
    } catch (...) {
        raise("MalformedSpec", "unreadable integer '" + s + "'");
    }
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    if (s.empty()) return out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        size_t end = comma == std::string::npos ? s.size() : comma;
        out.push_back(parse_int_text(s.substr(pos, end - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

const std::string kSqrtGlyph = "\xE2\x88\x9A";  // √
const std::string kPhiGlyph = "\xCF\x86";       // φ

RealPtr parse_surd_spec(const std::string& body) {
    if (body == kPhiGlyph) return make_surd(Rat(1, 2), Rat(1, 2), Int(5));
    if (body.rfind(kSqrtGlyph, 0) == 0)
        return make_surd(Rat(0), Rat(1), parse_int_text(body.substr(kSqrtGlyph.size())));
    // (a+b√D)/c or (a-b√D)/c
    if (body.empty() || body.front() != '(') raise("MalformedSpec", "surd must look like (a+b√D)/c");
    size_t close = body.find(')');
    size_t root = body.find(kSqrtGlyph);
    if (close == std::string::npos || root == std::string::npos || root > close)
        raise("MalformedSpec", "surd must look like (a+b√D)/c");
    // Split a and b on the sign that starts the b-term: scan from just before
    // the radical backwards to the first +/- not in position 1.
    size_t sign_pos = std::string::npos;
    for (size_t i = root; i-- > 2;) {
        if (body[i] == '+' || body[i] == '-') { sign_pos = i; break; }
    }
    if (sign_pos == std::string::npos) raise("MalformedSpec", "surd must look like (a+b√D)/c");
    std::string a_txt = body.substr(1, sign_pos - 1);
    std::string b_txt = body.substr(sign_pos, root - sign_pos);
    if (!b_txt.empty() && b_txt.front() == '+') b_txt.erase(0, 1);
    if (b_txt.empty() || b_txt == "-") b_txt += "1";
    std::string d_txt = body.substr(root + kSqrtGlyph.size(), close - root - kSqrtGlyph.size());
    if (close + 1 >= body.size() || body[close + 1] != '/')
        raise("MalformedSpec", "surd must look like (a+b√D)/c");
    Int c = parse_int_text(body.substr(close + 2));
    if (c <= 0) raise("MalformedSpec", "surd denominator must be positive");
    Int a = parse_int_text(a_txt), b = parse_int_text(b_txt);
    return make_surd(Rat(a, c), Rat(b, c), parse_int_text(d_txt));
}

}  // namespace

RealPtr make_source(const std::string& spec) {
    auto starts = [&](const char* prefix) { return spec.rfind(prefix, 0) == 0; };
    if (starts("rational:")) return make_rational(parse_rat_text(spec.substr(9)));
    if (starts("surd:")) return parse_surd_spec(spec.substr(5));
    if (starts("alg:")) {
        std::string body = spec.substr(4);
        size_t at = body.find('@');
        if (at == std::string::npos || at + 2 >= body.size() || body[at + 1] != '[' || body.back() != ']')
            raise("MalformedSpec", "algebraic spec must look like alg:<poly>@[lo,hi]");
        std::string range = body.substr(at + 2, body.size() - at - 3);
        size_t comma = range.find(',');
        if (comma == std::string::npos) raise("MalformedSpec", "isolating interval needs two endpoints");
        return make_algebraic(parse_poly_text(body.substr(0, at)),
                              parse_rat_text(range.substr(0, comma)),
                              parse_rat_text(range.substr(comma + 1)));
    }
    if (starts("stream:periodic:")) {
        std::string body = spec.substr(16);
        size_t semi = body.find(';');
        if (semi == std::string::npos) raise("MalformedSpec", "periodic stream must be <pre>;<cycle>");
        return make_quotient_stream(parse_int_list(body.substr(0, semi)),
                                    parse_int_list(body.substr(semi + 1)));
    }
    if (spec == "stream:e")
        return std::make_shared<StreamSource>(std::make_unique<ERule>());
    if (spec == "stream:factorial")
        return std::make_shared<StreamSource>(std::make_unique<FactorialRule>());
    if (spec == "liouville-resolute")
        return std::make_shared<StreamSource>(std::make_unique<LiouvilleResoluteRule>());
    if (spec == "liouville-irresolute")
        return std::make_shared<StreamSource>(std::make_unique<LiouvilleIrresoluteRule>());
    if (starts("liouville-series:"))
        return std::make_shared<SeriesSource>(parse_int_text(spec.substr(17)));
    if (starts("blockpair:")) {
        std::string body = spec.substr(10);
        char side = 'A';
        if (body.size() > 2 && body.compare(body.size() - 2, 2, "#B") == 0) {
            side = 'B';
            body = body.substr(0, body.size() - 2);
        }
        BlockPairSeed seed;
        Int s = parse_int_text(body);
        if (abs(s) > 1000000) raise("MalformedSpec", "blockpair seed out of range");
        seed.seed = static_cast<long>(s);
        return make_blockpair_side(seed, side);
    }
    raise("MalformedSpec", "unrecognized source '" + spec + "'");
}

// ---------------------------------------------------------------------------
// Block pair construction

BlockPairData blockpair_quotients(const BlockPairSeed& seed, size_t count) {
    struct Stream {
        std::vector<Int> a;
        Int q2{0}, q1{1};    // denominators after the quotients emitted so far
        Int last_succ{1};    // denominator right after this stream's last big quotient
        Int last_big{0};
        void append(const Int& quot) {
            a.push_back(quot);
            if (a.size() == 1) return;  // a_0 leaves q_0 = 1
            Int qn = quot * q1 + q2;
            q2 = q1; q1 = qn;
        }
    };
    Stream A, B;
    A.append(Int(1));
    B.append(Int(1));

    long cbase = 4 + ((seed.seed % 5) + 5) % 5;
    long run = seed.n1 > 0 ? seed.n1 : 4;
    BlockPairData out;

    for (int stage = 1; A.a.size() < count || B.a.size() < count; ++stage) {
        for (char side : {'A', 'B'}) {
            Stream& me = side == 'A' ? A : B;
            Stream& other = side == 'A' ? B : A;
            // 1-run until `run` fresh denominators clear the other stream's
            // marker; the run length doubles per stage, so the clearance
            // factor escapes.
            long cleared = 0;
            while (cleared < run) {
                me.append(Int(1));
                if (me.q1 > other.last_succ) ++cleared;
            }
            const Rat& kap = side == 'A' ? seed.kappa_a : seed.kappa_b;
            Int big;
            if (kap > 2) {
                // Aim the local exponent at kappa: c ~ q^(kappa-2) makes
                // q_{n+1} ~ q^(kappa-1), i.e. |error| ~ q^-kappa.
                Rat e = kap - 2;
                Int powed = pow_int(me.q1, static_cast<unsigned>(num(e)));
                Int r = iroot_floor(powed, static_cast<unsigned>(den(e)));
                big = r + 1;
            } else {
                // B's base sits 2 above A's so the two schedules never share
                // a value; both double per stage, keeping every big quotient
                // at the escape threshold relative to its own history.
                big = Int(cbase + (side == 'B' ? 2 : 0)) << stage;
            }
            if (big <= me.last_big) big = me.last_big + 1;  // bigs strictly increase
            Int q_before = me.q1;
            me.append(big);
            out.certs.push_back(SandwichCert{stage, side, me.a.size() - 1, big, q_before,
                                             me.q1, other.last_succ});
            me.last_big = big;
            me.last_succ = me.q1;
        }
        run *= 2;
        if (stage > 64) break;  // unreachable at desk scale; guards runaway counts
    }
    out.quots_a = std::move(A.a);
    out.quots_b = std::move(B.a);
    return out;
}

}  // namespace ideoarith
