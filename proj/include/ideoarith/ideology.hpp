#pragma once

// Scalar diophantine approximation pairs and their arithmetic: attaching
// nearest-integer numerators to denominator sequences, growth/decay window
// membership, duality and fractional-linear actions, the product/sum/
// difference composition law, best-subsequence classes with interleaving
// verdicts, and stream classification heuristics.

#include <optional>
#include <string>
#include <vector>

#include "ideoarith/gdcalc.hpp"
#include "ideoarith/interval.hpp"
#include "ideoarith/numeric.hpp"
#include "ideoarith/reals.hpp"

namespace ideoarith {

// A denominator sequence with certified nearest-integer numerators and error
// enclosures for one real value.  attach() guarantees nearest-integer
// numerators (half-integer ties go to the even candidate and the index is
// recorded); pairs produced by dual/pgl2_act/ideo_compose carry formula
// numerators instead, which agree with nearest-integer choices once the
// errors are small.
struct ApproxPair {
    RealPtr x;
    std::vector<Int> denoms;
    std::vector<Int> numers;
    std::vector<Interval> errors;        // n_i * x - numer_i at build precision
    std::vector<size_t> tieIndices;      // half-integer ties rounded to even
    std::vector<size_t> skippedIndices;  // indices dropped by dual/actions
    unsigned precisionBits = 128;
};

ApproxPair attach(const RealPtr& x, const std::vector<Int>& denoms, unsigned bits);

// Recompute one error enclosure at a finer precision.
Interval pair_error_at(const ApproxPair& p, size_t idx, unsigned bits);

// Growth/decay window. All classes must be tagged infinitesimal; iota/lambda
// refine the growth side (fine membership).
struct FiltrationWindow {
    GDClass mu, nu;
    std::optional<GDClass> iota, lambda;
};

// The composition-law index pattern: mu and nu (and iota and lambda) trade
// places.
FiltrationWindow swap_window(const FiltrationWindow& w);
bool windows_swapped(const FiltrationWindow& a, const FiltrationWindow& b);

// Member-evidence verdict for a pair against a window:
//   EQUIVALENT  |n_i|*mu_i certifiably escapes to zero across the tail half
//               (strictly decreasing, total factor >= 2), stays below iota
//               when the window is fine, and |eps_i| <= nu_i on the tail half
//   GREATER     a certified violation (growth escaping upward, or an error
//               above nu at a tail index)
//   UNDECIDED   anything else
// An empty pair is a member of every window.
Verdict membership(const ApproxPair& p, const FiltrationWindow& w, size_t depth);

// Pair for 1/x with denominators and numerators exchanged; indices with a
// zero numerator cannot serve as denominators and are recorded as skipped.
// The error law eps'(n_perp) = -eps(n)/x is interval-checked per index.
ApproxPair dual(const ApproxPair& p);

struct Matrix2 {
    Int a, b, c, d;
};

// Fractional-linear action: denominators c*numer + d*denom, numerators
// a*numer + b*denom, attached to (a*x+b)/(c*x+d).  |det| must be 1.  The
// error law eps' = det * eps/(c*x+d) is interval-checked per index; the
// determinant sign makes [[0,1],[1,0]] coincide with dual.
ApproxPair pgl2_act(const Matrix2& A, const ApproxPair& p);

struct ComposeResult {
    ApproxPair product, sum, difference;
    Verdict verdict;
};

// Ideological composition on a common index window: denominators m_i*n_i,
// numerators m'n', m'n + mn', m'n - mn'.  Requires wB = swap_window(wA).
// Both membership verdicts must be decided; a certified violation raises
// MembershipFailed, an UNDECIDED input poisons the verdict.  The exact error
// identity eps(mn) = eps(m)eps(n) + eps(m)n' + eps(n)m' is checked per index.
ComposeResult ideo_compose(const ApproxPair& pA, const ApproxPair& pB,
                           const FiltrationWindow& wA, const FiltrationWindow& wB,
                           size_t depth);

// Escape events: indices n (1-based) whose successor quotient a_{n+1} is at
// least twice the running maximum of a_1..a_n.
std::vector<size_t> escape_selection(const std::vector<Int>& quots, size_t maxN);

struct BestInterval {
    GDClass nuBreve;              // |eps(q_{n_i})| along the selection
    GDClass muBreve;              // 1/q_{n_i} along the selection
    Verdict infinitePQ;           // EQUIVALENT = selected successor quotients
                                  // escape; GREATER = certified bounded;
                                  // UNDECIDED otherwise
    std::vector<size_t> selection;  // the selected convergent indices
};

// Selector grammar: "all" | "escape" | "list:<csv>" | "stride:<a>,<d>".
BestInterval best_interval(const RealPtr& x, const std::string& selector,
                           size_t depth);

enum class FlatValue { COMPOSABLE, INCOMPOSABLE, UNDECIDED };
const char* to_string(FlatValue v);

struct FlatResult {
    FlatValue value;
    size_t depth;
    std::string witness;
};

// Interleaving verdict for the flat composition condition: COMPOSABLE when
// the escape-selection best classes of x and y certifiably interleave
// (mubreve+ <= mubreve'+ < mubreve, in either role assignment); INCOMPOSABLE
// when both streams are quotient-bounded on the window, or when both
// interleaving branches are certified to fail on the rank-aligned escape
// selections; UNDECIDED otherwise.
FlatResult flat_composable(const RealPtr& x, const RealPtr& y, size_t depth);

struct StreamReport {
    Int maxQuotient;         // max a_i on the window
    bool escaping;           // an escape event lands in the tail half
    bool resolute;           // tail-half quotients strictly increasing and escaping
    bool abyssal;            // growing blocks of bounded quotients
    Interval kappa;          // tail-half max of log(1/|eps_i|)/log(q_i) at best indices
    bool liouvilleEvidence;  // kappa still growing at the window end
};

StreamReport classify_stream(const RealPtr& x, size_t depth);

struct IncomposablePair {
    RealPtr first, second;
    std::vector<SandwichCert> certs;
};

// Deterministic interleaved-block construction; the two streams leapfrog so
// that neither side's best classes can interleave with the other's.
IncomposablePair build_incomposable_pair(const BlockPairSeed& seed);

}  // namespace ideoarith
