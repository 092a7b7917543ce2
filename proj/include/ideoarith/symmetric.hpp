#pragma once

// Symmetric side of approximation pairs: per-index theta-norms, the
// polarized pairing with causal tags, banded symmetry verdicts with rational
// grading, Zeckendorf representations with the golden membership criterion,
// and the certified two-value minimum scan.

#include <cstddef>
#include <string>
#include <vector>

#include "ideoarith/gdcalc.hpp"
#include "ideoarith/ideology.hpp"
#include "ideoarith/interval.hpp"
#include "ideoarith/numeric.hpp"
#include "ideoarith/reals.hpp"

namespace ideoarith {

// F_k with F_2 = 1, F_3 = 2, F_4 = 3, ... (index 1 never appears, so every
// positive integer has exactly one representation below).  Requires k >= 2.
Int fibonacci(unsigned k);

// Zeckendorf representation: N = sum of F_{i_j} over strictly increasing
// indices i_1 < ... < i_k, each >= 2 and no two consecutive.
struct Zeck {
    Int N;
    std::vector<unsigned> indices;
    unsigned zdeg() const {
        return indices.empty() ? 0u : indices.back() - indices.front();
    }
};

// Greedy (hence canonical) representation of N >= 1.
Zeck zeckendorf(const Int& N);

enum class CausalTag { TimeLike, SpaceLike, LightLike };
const char* to_string(CausalTag t);

// One pairing sample <m, n> = (m_i*eps(n_i) + n_i*eps(m_i)) / 2 at a shared
// index.  The tag follows the sign of the value: positive time-like,
// negative space-like, zero light-like.  A self-pairing has value
// n_i*eps(n_i) and sigma is the component sign pair (sign n_i, sign eps_i)
// of the sampled vector, so sigma = (+,+) or (-,-) exactly on time-like
// samples and sigma[1] = 0 exactly on light-like ones; for a mixed pairing
// sigma holds the certified signs of the two halves m_i*eps(n_i) and
// n_i*eps(m_i).
struct LorentzSample {
    size_t index = 0;
    Interval value;
    CausalTag tag = CausalTag::LightLike;
    int sigma[2] = {0, 0};
};

// Pair two sequences at index i.  Both pairs must sit on the same source
// (canonical spelling equality); MixedTheta otherwise.
LorentzSample lorentz_pairing(const ApproxPair& a, const ApproxPair& b, size_t i);

// Per-index norms (|n_i| * |eps_i|)^(1/2) over the half-open range [lo, hi).
std::vector<Interval> theta_norm(const ApproxPair& p, size_t lo, size_t hi);

// kappa-graded variant (|n_i|^(kappa-1) * |eps_i|)^(1/kappa) for rational
// kappa > 1; kappa = 2 is theta_norm.  Powers are exact interval arithmetic
// (integer powers and k-th roots), never float.
std::vector<Interval> theta_norm_graded(const ApproxPair& p, const Rat& kappa,
                                        size_t lo, size_t hi);

// Banded-symmetry verdict over the tail half of the first `depth` indices:
//   EQUIVALENT  the products |n_i|*|eps_i| are certified inside one band
//               [c, C] with C/c <= bound
//   LESS        the products certifiably escape to zero, or vanish outright
//               (light-like collapse)
//   GREATER     the products certifiably escape upward
//   UNDECIDED   anything else (oscillation past the band, precision wall)
Verdict symmetric_verdict(const ApproxPair& p, size_t depth,
                          const Rat& bound = Rat(65536));

// Same verdict on the graded products |n_i|^(kappa-1) * |eps_i|, rational
// kappa > 1 (kappa = 2 is the plain verdict).  Distinct gradings separate:
// when one kappa certifies EQUIVALENT on an escaping denominator sequence,
// every other grading is driven to LESS or GREATER on the same window.
Verdict symmetric_verdict_graded(const ApproxPair& p, const Rat& kappa,
                                 size_t depth, const Rat& bound = Rat(65536));

// Golden membership test: ||N*phi|| < phi^-n holds iff i_1 >= n+1, or
// i_1 = n and the first Zeckendorf gap i_2 - i_1 is odd and >= 3.  Both
// readings are evaluated, the index criterion and the exact comparison in
// Q(sqrt 5); disagreement raises CriterionMismatch.  ||F_n*phi|| = phi^-n
// exactly, so the strict inequality fails on that boundary from both sides.
struct GoldenErrorCert {
    bool holds = false;
    Zeck zeck;
    Interval distance;   // ||N*phi||
    Interval threshold;  // phi^-n
};
GoldenErrorCert golden_error_test(const Int& N, unsigned n);

// Symmetry verdict for a positive integer sequence against the golden ratio.
// Two independent readings must agree: the Zeckendorf degrees zdeg(seq_i)
// stay bounded across the window (EQUIVALENT) or certifiably escape
// (GREATER), and the attached pair passes symmetric_verdict with the same
// band bound.  Disagreement or an undecided reading yields UNDECIDED; an
// escaping family needs a window long enough for its products to outgrow
// the band bound before the two readings line up.
Verdict golden_symmetric_verdict(const std::vector<Int>& seq, size_t depth,
                                 const Rat& bound = Rat(65536));

// One row of the two-value scan trace, recorded where the running minimum
// improves.
struct LittlewoodRow {
    Int n;
    Interval nErrX;    // ||n*x||
    Interval nErrY;    // ||n*y||
    Interval product;  // n * ||n*x|| * ||n*y||
    Rat runningMin;    // upper bound of the best product so far
};

// Scan of one index range [lo, hi], both ends inclusive.  rows keeps the
// indices that improved the minimum within the range.
struct LittlewoodPartial {
    Int lo, hi;
    Int argmin;
    Interval minValue;
    std::vector<LittlewoodRow> rows;
};

struct LittlewoodResult {
    Int argmin;
    Interval minValue;
    std::vector<LittlewoodRow> trace;  // global running-minimum improvements
};

// Certified scan of n * ||n*x|| * ||n*y|| for n in [lo, hi].  Comparisons
// escalate precision near ties; a tie still unresolved at the precision cap
// raises PrecisionExhausted (exact value ties resolve to the smaller n and
// are fine).
LittlewoodPartial littlewood_scan_range(const RealPtr& x, const RealPtr& y,
                                        const Int& lo, const Int& hi, unsigned bits);

// Merge partial scans whose ranges partition [1, N].  Minima combine by
// (value, then smaller n); the merged trace keeps exactly the rows where
// the global prefix minimum improves, re-enclosed at the base precision, so
// the result does not depend on the partition.
LittlewoodResult littlewood_merge(const RealPtr& x, const RealPtr& y,
                                  std::vector<LittlewoodPartial> parts,
                                  unsigned bits);

// Full scan over 1..limit (limit >= 2).
LittlewoodResult littlewood_scan(const RealPtr& x, const RealPtr& y,
                                 const Int& limit, unsigned bits);

}  // namespace ideoarith
