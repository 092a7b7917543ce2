#pragma once

// Growth/decay classes at desk scale.  A class is represented by a
// deterministic positive sequence; every order or equivalence question is
// answered on a finite window with an explicit verdict, never silently.
//
// Window convention: term indices run 1..depth and all decisions are made on
// the tail half (indices above depth/2).  Monotone-escape verdicts take
// precedence over the bounded-ratio band in compare_class and
// frobenius_compare, so a sequence that certifiably drifts out of the class
// orders correctly even while its prefix is still inside the band.

#include <functional>
#include <string>

#include "ideoarith/interval.hpp"
#include "ideoarith/numeric.hpp"

namespace ideoarith {

enum class VerdictValue { LESS, GREATER, EQUIVALENT, UNDECIDED };

const char* to_string(VerdictValue v);

struct Verdict {
    VerdictValue value = VerdictValue::UNDECIDED;
    size_t depth = 0;          // window the decision (or failure) used
    std::string witness;       // bound echo, crossing index, or failure reason
};

// Declared intent of a class representative. Infinitesimal and infinite tags
// are monitored on every tested window: a certified term on the wrong side of
// 1 in the tail half raises TagViolation at the use site.
enum class GDTag { Infinitesimal, Unit, Infinite };

class GDClass {
public:
    // Certified enclosure of term i at the requested precision; exact
    // generators return point intervals and may ignore the bit count.
    using Term = std::function<Interval(size_t i, unsigned bits)>;

    GDClass(Term term, GDTag tag, std::string label);

    // Raises NonPositiveTerm when the enclosure is certainly <= 0.
    Interval term(size_t i, unsigned bits = 128) const;

    GDTag tag() const { return tag_; }
    const std::string& label() const { return label_; }

private:
    Term term_;
    GDTag tag_;
    std::string label_;
};

// Direct constructors.
GDClass gd_pow(const Rat& b);                      // terms b^{-i}
GDClass gd_poly(long k);                           // terms i^{-k}
GDClass gd_from_function(std::function<Rat(size_t)> f, GDTag tag,
                         std::string label);

// Class-spec grammar:
//   seq:pow:<b>            b^{-i} for rational b > 0
//   seq:poly:<k>           i^{-k} for integer k
//   seq:factored:<expr>    expression over i with + - * / ^ and parentheses
//   seq:from-pair:<src>    |q_i x - p_i| along the convergents of source <src>
//   seq:recip-denoms:<src> 1/q_i along the convergents of source <src>
GDClass make_class(const std::string& spec);

// Order/equivalence verdict between class representatives.
//   EQUIVALENT  every tail-half ratio u_i/v_i certified inside [1/bound, bound]
//   LESS        ratio certified strictly decreasing across the tail half with
//               total factor >= 3/2 (GREATER: strictly increasing likewise)
//   UNDECIDED   anything else, with the failure reason in the witness
// depth >= 8 required. Escape is tested before the band.
Verdict compare_class(const GDClass& u, const GDClass& v, size_t depth,
                      const Rat& bound);

// Same decision core without the depth floor (depth >= 2).  For callers whose
// streams cannot afford an eight-term window, e.g. interleaving checks over
// escape-event subsequences of capped streams; the verdict echoes the short
// window it used.
Verdict compare_class_at(const GDClass& u, const GDClass& v, size_t depth,
                         const Rat& bound);

enum class TropOp { Mul, Add, Sub };

// Pointwise product / max / min of representatives. Max realizes tropical
// addition (the class of a sum equals the class of the max); min realizes
// tropical subtraction.
GDClass trop_combine(const GDClass& u, const GDClass& v, TropOp op);

// Verdict up to the Frobenius action: compares log u_i against log v_i with
// the same band/escape machinery applied to log(v_i)/log(u_i). Indices where
// a term equals 1 are skipped; more than depth/4 skipped tail-half indices
// raise LogOfUnit.
Verdict frobenius_compare(const GDClass& u, const GDClass& v, size_t depth,
                          const Rat& bound);

// Shift invariance of a nonincreasing representative: GREATER (= not
// shift-invariant) when the consecutive ratios s_i/s_{i+1} escape upward
// across the tail half, EQUIVALENT (= shift-invariant) when every tail-half
// consecutive ratio is certified <= bound, UNDECIDED otherwise. NotMonotone
// when the window is not certified nonincreasing.
Verdict shift_invariant_verdict(const GDClass& u, size_t depth,
                                const Rat& bound);

}  // namespace ideoarith
