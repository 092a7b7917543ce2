#pragma once

// Internal escalation helpers shared by the pair-arithmetic modules.  All of
// them retry a computation at doubled precision until a certificate lands or
// the process-wide cap is reached; Unknown is only ever returned when no
// tested precision refuted the claim either.

#include <functional>
#include <string>

#include "ideoarith/error.hpp"
#include "ideoarith/interval.hpp"
#include "ideoarith/reals.hpp"

namespace ideoarith {
namespace detail {

// Evaluate f under precision escalation, retrying when an enclosure is still
// too loose to divide through.  Exhausting the cap rethrows the last failure.
inline Interval with_refinement(const std::function<Interval(unsigned)>& f, unsigned bits) {
    for (unsigned b = std::max(bits, 64u);; b *= 2) {
        try {
            return f(b);
        } catch (const IdeoError& e) {
            if (e.code() != "DivisorStraddlesZero" || b >= precision_cap()) throw;
        }
    }
}

// Both arguments enclose the same exact quantity, so disjointness certifies a
// broken derivation rather than a precision shortfall.
inline void require_overlap(const Interval& got, const Interval& expect, const char* law) {
    if (!intersects(got, expect))
        raise("ErrorLawViolated",
              std::string(law) + ": independently derived enclosures are disjoint");
}

// Certify that g strictly escapes across class indices [a, b]: monotone in
// the requested direction at every step and a total factor of at least 2
// between the endpoints.  Unknown survives only if no step refutes it at any
// affordable precision.
inline Cert tail_escape(const std::function<Interval(size_t, unsigned)>& g, size_t a,
                        size_t b, bool downward) {
    if (a >= b) return Cert::No;
    auto attempt = [&](unsigned bits) -> Cert {
        bool unknown = false;
        for (size_t i = a; i < b; ++i) {
            Interval u = g(i, bits), v = g(i + 1, bits);
            Cert c = downward ? cert_lt(v, u) : cert_gt(v, u);
            if (c == Cert::No) return Cert::No;
            if (c == Cert::Unknown) unknown = true;
        }
        Interval first = g(a, bits), last = g(b, bits);
        Interval ratio = downward ? first / last : last / first;
        Cert c = cert_ge(ratio, Interval(Rat(2)));
        if (c == Cert::No) return Cert::No;
        if (c == Cert::Unknown) unknown = true;
        return unknown ? Cert::Unknown : Cert::Yes;
    };
    for (unsigned b = 96;; b *= 2) {
        Cert c = Cert::Unknown;
        try {
            c = attempt(b);
        } catch (const IdeoError& e) {
            if (e.code() != "DivisorStraddlesZero") throw;
        }
        if (c != Cert::Unknown) return c;
        if (b >= precision_cap()) return Cert::Unknown;
    }
}

// Per-index certificate under escalation.
inline Cert decide_cert(const std::function<Cert(unsigned)>& f) {
    for (unsigned b = 96;; b *= 2) {
        Cert c = Cert::Unknown;
        try {
            c = f(b);
        } catch (const IdeoError& e) {
            if (e.code() != "DivisorStraddlesZero") throw;
        }
        if (c != Cert::Unknown) return c;
        if (b >= precision_cap()) return Cert::Unknown;
    }
}

}  // namespace detail
}  // namespace ideoarith
