#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ideoarith/interval.hpp"
#include "ideoarith/numeric.hpp"

namespace ideoarith {

// Dense univariate polynomial over Z.  c[i] is the coefficient of X^i;
// trailing zeros are trimmed, so degree() == c.size() - 1 and the zero
// polynomial has an empty vector (degree -1).
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(unsigned k, const Int& coeff = Int(1));
    static IntPoly constant(const Int& v);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }
    Int lead() const { return c.empty() ? Int(0) : c.back(); }

    void trim();
};

bool operator==(const IntPoly& a, const IntPoly& b);
IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const Int& k, const IntPoly& a);
IntPoly poly_pow(const IntPoly& a, unsigned e);

IntPoly derivative(const IntPoly& a);

Int eval_int(const IntPoly& a, const Int& x);
Rat eval_rat(const IntPoly& a, const Rat& x);
Interval eval_interval(const IntPoly& a, const Interval& x);

// gcd of |coefficients| (0 for the zero polynomial).
Int content(const IntPoly& a);
// a / content(a); keeps the sign of the leading coefficient.
IntPoly primitive_part(const IntPoly& a);

// Quotient when g divides f exactly over Z; nullopt otherwise.
std::optional<IntPoly> try_divide_exact(const IntPoly& f, const IntPoly& g);

// Primitive gcd with positive leading coefficient (subresultant remainders).
IntPoly gcd_poly(const IntPoly& a, const IntPoly& b);

// Yun decomposition: pairwise-coprime primitive squarefree factors with
// multiplicities, product of factor^mult equal to primitive_part(f) up to
// sign.  Multiplicities ascend.
std::vector<std::pair<IntPoly, int>> squarefree_decompose(const IntPoly& f);

// Resultant of two nonzero polynomials (Sylvester determinant, fraction-free
// elimination).  res(f, g) = lead(f)^deg(g) * prod g(alpha_i).
Int resultant_int(const IntPoly& f, const IntPoly& g);

// Fraction-free determinant of a square integer matrix.
Int bareiss_det(std::vector<std::vector<Int>> m);

// Every root alpha satisfies |alpha| < cauchy_root_bound(f).
Rat cauchy_root_bound(const IntPoly& f);

// Distinct real roots in the open interval (a, b); requires f(a) != 0 and
// f(b) != 0.  The whole-line overload counts all distinct real roots.
int count_real_roots(const IntPoly& f, const Rat& a, const Rat& b);
int count_real_roots(const IntPoly& f);

// Unique interpolating polynomial through the given nodes; raises
// NonIntegralInterpolation if it fails to have integer coefficients.
IntPoly interpolate_int(const std::vector<std::pair<Int, Int>>& points);

// Text form "x^4-12x^2+36": descending exponents, unit coefficients and
// first-power exponents elided, zero polynomial printed "0".
std::string poly_text(const IntPoly& f);
// Accepts the printed form plus optional spaces, '*' between coefficient and
// variable, and 'X' for 'x'.  Raises MalformedSpec on anything else.
IntPoly parse_poly_text(const std::string& s);

}  // namespace ideoarith
