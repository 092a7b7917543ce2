#include <algorithm>

#include "ideoarith/error.hpp"
#include "ideoarith/reals.hpp"

namespace ideoarith {

namespace {

// Full expansion of a terminating source, found by doubling the request
// until the returned list comes back short.
std::vector<Int> full_rational_quotients(const RealPtr& x, size_t at_least) {
    for (size_t want = std::max<size_t>(at_least, 8);; want *= 2) {
        std::vector<Int> a = x->quotients(want);
        if (a.size() < want) return a;
    }
}

}  // namespace

std::vector<Int> partial_quotients(const RealPtr& x, size_t count) {
    return x->quotients(count);
}

std::vector<Convergent> convergents_from_quotients(const std::vector<Int>& a) {
    std::vector<Convergent> out;
    out.reserve(a.size());
    Int p2 = 1, q2 = 0;  // virtual convergent at index -1
    Int p1 = 0, q1 = 1;  // shifted so the loop below is uniform
    for (size_t i = 0; i < a.size(); ++i) {
        if (i == 0) {
            p1 = a[0];
            q1 = 1;
        } else {
            Int pn = a[i] * p1 + p2, qn = a[i] * q1 + q2;
            p2 = p1; q2 = q1;
            p1 = pn; q1 = qn;
        }
        out.push_back(Convergent{i, p1, q1});
    }
    return out;
}

std::vector<Convergent> convergents(const RealPtr& x, size_t k) {
    if (k == 0) return {};
    std::vector<Int> a = x->quotients(k);
    if (a.size() < k)
        raise("RationalTerminated",
              "expansion terminates after " + std::to_string(a.size()) + " quotients");
    return convergents_from_quotients(a);
}

Intermediate intermediate_convergent(const RealPtr& x, size_t n, const Int& r) {
    std::vector<Int> a = x->quotients(n + 3);
    if (a.size() < n + 3)
        raise("IndexOutOfRange", "intermediate ladder at n=" + std::to_string(n) +
                                     " needs quotient a_" + std::to_string(n + 2));
    if (r < 0 || r > a[n + 2] - 1)
        raise("RExceedsQuotient", "r must lie in [0, a_{n+2} - 1] = [0, " +
                                      Int(a[n + 2] - 1).str() + "]");
    std::vector<Convergent> c = convergents_from_quotients(a);
    return Intermediate{n, r, r * c[n + 1].p + c[n].p, r * c[n + 1].q + c[n].q};
}

Interval tail_quotient(const RealPtr& x, size_t n, unsigned bits) {
    if (auto ts = x->tail_surd(n)) return ts->enclose(bits);
    if (x->exact_rational()) {
        std::vector<Int> a = full_rational_quotients(x, n + 1);
        if (n >= a.size())
            raise("IndexOutOfRange", "expansion has only " + std::to_string(a.size()) +
                                         " quotients");
        Rat t(a.back());
        for (size_t i = a.size() - 1; i-- > n;) t = Rat(a[i]) + Rat(1) / t;
        return Interval(t);
    }
    // Consecutive truncations of the tail alternate around theta_n and
    // tighten at the same rate as convergents.
    Rat target = pow2(-static_cast<long>(bits));
    for (size_t j = 2;; j = j + j / 2 + 1) {
        std::vector<Int> a = x->quotients(n + j + 1);
        if (a.size() < n + j + 1)
            raise("IndexOutOfRange", "expansion too short for tail at n=" + std::to_string(n));
        auto truncate = [&](size_t last) {
            Rat t(a[last]);
            for (size_t i = last; i-- > n;) t = Rat(a[i]) + Rat(1) / t;
            return t;
        };
        Rat t1 = truncate(n + j - 1), t2 = truncate(n + j);
        if (abs_rat(t2 - t1) <= target)
            return t1 < t2 ? Interval(t1, t2) : Interval(t2, t1);
    }
}

Interval intermediate_error_closed(const RealPtr& x, size_t n, const Int& r, unsigned bits) {
    Intermediate ic = intermediate_convergent(x, n, r);  // validates n and r
    (void)ic;
    std::vector<Convergent> c = convergents(x, n + 2);
    const Int& qn = c[n].q;
    const Int& qn1 = c[n + 1].q;
    Rat target = pow2(-static_cast<long>(bits));
    for (unsigned tb = bits + 8;; tb *= 2) {
        if (tb > precision_cap())
            raise("PrecisionExhausted", "closed-form intermediate error did not converge");
        Interval t = tail_quotient(x, n + 2, tb);
        Interval e = (t - Interval(Rat(r))) / (t * Interval(Rat(qn1)) + Interval(Rat(qn)));
        if (e.width() <= target) return e;
    }
}

Interval eval_interval(const RealPtr& x, unsigned bits) { return x->enclose(bits); }

Interval pair_error(const RealPtr& x, const Int& q, const Int& p, unsigned bits) {
    if (auto s = pair_error_exact(x, q, p)) return s->enclose(bits);
    unsigned pad = bits + 4;
    Rat aq = abs_rat(Rat(q));
    if (aq > 1) pad += static_cast<unsigned>(floor_log2(aq)) + 1;
    Interval v = x->enclose(pad);
    return Interval(Rat(q)) * v - Interval(Rat(p));
}

std::optional<Surd> pair_error_exact(const RealPtr& x, const Int& q, const Int& p) {
    if (auto r = x->exact_rational()) return Surd(Rat(q) * *r - Rat(p), 0, 2);
    if (auto s = x->exact_surd()) return *s * Rat(q) - Rat(p);
    return std::nullopt;
}

std::pair<Int, Int> dirichlet_find(const RealPtr& x, const Int& N) {
    if (N < 2) raise("BadArgument", "dirichlet threshold must be at least 2");
    // Convergents with q < N; the expansion may terminate first.
    std::vector<Int> a;
    for (size_t want = 8;; want *= 2) {
        a = x->quotients(want);
        if (a.size() < want) break;
        std::vector<Convergent> c = convergents_from_quotients(a);
        if (c.back().q >= N) break;
    }
    std::vector<Convergent> c = convergents_from_quotients(a);
    Rat bound = Rat(1, N);

    // Smallest denominator wins: walk the ladder upward and return the first
    // convergent below the threshold whose error certifies strictly under 1/N.
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k].q >= N) break;
        if (auto e = pair_error_exact(x, c[k].q, c[k].p)) {
            Surd gap = (e->sign() >= 0 ? *e : -*e) - bound;
            if (gap.sign() < 0) return {c[k].p, c[k].q};
            continue;
        }
        for (unsigned bits = 64;; bits *= 2) {
            if (bits > precision_cap())
                raise("PrecisionExhausted", "could not certify the dirichlet bound");
            Interval e = abs_i(pair_error(x, c[k].q, c[k].p, bits));
            Cert v = cert_lt(e, Interval(bound));
            if (v == Cert::Yes) return {c[k].p, c[k].q};
            if (v == Cert::No) break;
        }
    }
    // Irrational targets always have a witness: the last convergent below N
    // satisfies the strict bound.  A rational target whose expansion ends
    // before the threshold can genuinely lack one.
    raise("NoStrictDirichletPair", "no denominator below " + N.str() + " meets the strict bound");
}

}  // namespace ideoarith
