#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideoarith/interval.hpp"
#include "ideoarith/intpoly.hpp"

namespace ideoarith {

// Process-wide ceiling for automatic precision escalation (bits).
unsigned precision_cap();
void set_precision_cap(unsigned bits);

// Exact element u + v*sqrt(D) of a real quadratic field.  D is squarefree
// and > 1 (validated at the construction boundary, preserved by arithmetic).
// v == 0 embeds the rationals, so the type is closed under field operations.
struct Surd {
    Rat u, v;
    Int D;

    Surd() : u(0), v(0), D(2) {}
    Surd(Rat u_, Rat v_, Int D_) : u(std::move(u_)), v(std::move(v_)), D(std::move(D_)) {}

    bool is_rational() const { return v == 0; }
    Surd conj() const { return Surd(u, -v, D); }
    Rat norm() const { return u * u - v * v * Rat(D); }  // value * conjugate
    int sign() const;                                    // exact
    Int floor_int() const;                               // exact
    Interval enclose(unsigned bits) const;               // width <= 2^-bits
};

Surd operator+(const Surd& a, const Surd& b);
Surd operator-(const Surd& a, const Surd& b);
Surd operator-(const Surd& a);
Surd operator*(const Surd& a, const Surd& b);
Surd operator/(const Surd& a, const Surd& b);  // throws DivisionByZero
Surd operator+(const Surd& a, const Rat& r);
Surd operator-(const Surd& a, const Rat& r);
Surd operator*(const Surd& a, const Rat& r);
bool operator==(const Surd& a, const Surd& b);

struct Convergent {
    size_t i;
    Int p, q;
};

struct Intermediate {
    size_t n;
    Int r;
    Int p, q;
};

// A computable real: certified enclosures plus a partial-quotient stream.
// Implementations are immutable after construction and safe to share across
// threads (internal caches are mutex-guarded).
class RealSource {
public:
    virtual ~RealSource() = default;

    // Enclosure of width <= 2^-bits, nested under refinement.
    virtual Interval enclose(unsigned bits) const = 0;

    // First `count` partial quotients; shorter only when the expansion
    // terminates (rational value).  Deterministic across calls.
    virtual std::vector<Int> quotients(size_t count) const = 0;

    // Canonical source spelling; equality of strings is handle identity.
    virtual std::string describe() const = 0;

    virtual std::optional<Rat> exact_rational() const { return std::nullopt; }
    virtual std::optional<Surd> exact_surd() const { return std::nullopt; }
    // Exact complete quotient theta_n when the source supports it.
    virtual std::optional<Surd> tail_surd(size_t) const { return std::nullopt; }
};

using RealPtr = std::shared_ptr<const RealSource>;

// Parses the source grammar:
//   rational:<p>/<q> | surd:(<a>+<b>√<D>)/<c> | alg:<poly>@[<lo>,<hi>] |
//   stream:periodic:<pre>;<cycle> | stream:e | stream:factorial |
//   liouville-resolute | liouville-irresolute | liouville-series:<m> |
//   blockpair:<seed>
// plus the aliases surd:φ and surd:√<D>.
RealPtr make_source(const std::string& spec);

RealPtr make_rational(const Rat& v);
RealPtr make_surd(const Rat& u, const Rat& v, const Int& D);
RealPtr make_algebraic(const IntPoly& minpoly, const Rat& lo, const Rat& hi);
RealPtr make_quotient_stream(std::vector<Int> preamble, std::vector<Int> cycle);

// Derived values.  Exact when the operands stay inside one quadratic field
// (or the product of two pure radicals lands in another); otherwise a
// certified-enclosure wrapper whose quotients come from refinement.
RealPtr make_product(const RealPtr& x, const RealPtr& y);
RealPtr make_sum(const RealPtr& x, const RealPtr& y);
RealPtr make_difference(const RealPtr& x, const RealPtr& y);

// (a*x + b) / (c*x + d) with ad - bc != 0.  Raises PoleHit when c*x + d = 0
// (possible only for rational x), BadArgument on a singular matrix.
RealPtr make_moebius(const RealPtr& x, const Int& a, const Int& b, const Int& c,
                     const Int& d);
RealPtr make_reciprocal(const RealPtr& x);

std::vector<Int> partial_quotients(const RealPtr& x, size_t count);

// First k convergents (indices 0..k-1) with the seeds q_0=1, q_1=a_1,
// p_0=a_0, p_1=a_1*a_0+1.  Raises RationalTerminated if the expansion has
// fewer than k quotients.
std::vector<Convergent> convergents(const RealPtr& x, size_t k);

Intermediate intermediate_convergent(const RealPtr& x, size_t n, const Int& r);

// |q_{n,r}*theta - p_{n,r}| by the closed form
// (theta_{n+2} - r) / (theta_{n+2}*q_{n+1} + q_n).
Interval intermediate_error_closed(const RealPtr& x, size_t n, const Int& r, unsigned bits);

// theta_n = [a_n; a_{n+1}, ...], the complete quotient.
Interval tail_quotient(const RealPtr& x, size_t n, unsigned bits);

// (p, q) with 1 <= q < N and |q*theta - p| < 1/N, located on the convergent
// ladder (no exhaustive search).
std::pair<Int, Int> dirichlet_find(const RealPtr& x, const Int& N);

Interval eval_interval(const RealPtr& x, unsigned bits);

// Signed error q*theta - p to width <= 2^-bits.
Interval pair_error(const RealPtr& x, const Int& q, const Int& p, unsigned bits);

// Exact signed error when the source is rational or a quadratic surd.
std::optional<Surd> pair_error_exact(const RealPtr& x, const Int& q, const Int& p);

// Convergents of an explicit quotient list (helper shared by the stream
// machinery and tests).
std::vector<Convergent> convergents_from_quotients(const std::vector<Int>& a);

// Deterministic two-stream construction whose big-quotient stages leapfrog
// each other; the certificates record which denominators sandwich which.
struct SandwichCert {
    int stage;
    char side;          // 'A' or 'B': who appended the big quotient
    size_t index;       // position of the big quotient in that stream
    Int big_quotient;
    Int q_before;       // denominator just before the big quotient
    Int q_after;        // denominator just after (the successor)
    Int other_marker;   // the other stream's last successor it had to clear
};

struct BlockPairSeed {
    long seed = 0;
    int n1 = 4;          // stage-1 run length, doubles per stage
    Rat kappa_a = 0;     // 0 = scheduled big quotients; >2 = q^(kappa-1)
    Rat kappa_b = 0;
};

struct BlockPairData {
    std::vector<Int> quots_a, quots_b;
    std::vector<SandwichCert> certs;
};

BlockPairData blockpair_quotients(const BlockPairSeed& seed, size_t count);
RealPtr make_blockpair_side(const BlockPairSeed& seed, char side);

}  // namespace ideoarith
