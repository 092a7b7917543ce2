#include "ideoarith/ideology.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>

#include "certify.hpp"
#include "ideoarith/error.hpp"

namespace ideoarith {
namespace {

using detail::decide_cert;
using detail::require_overlap;
using detail::tail_escape;
using detail::with_refinement;

Int iabs(const Int& v) { return v < 0 ? Int(-v) : v; }

void check_window_classes(const FiltrationWindow& w) {
    auto chk = [](const GDClass& c, const char* role) {
        if (c.tag() != GDTag::Infinitesimal)
            raise("BadArgument",
                  std::string("window class for ") + role + " must be tagged infinitesimal");
    };
    chk(w.mu, "growth");
    chk(w.nu, "decay");
    if (w.iota) chk(*w.iota, "fine growth");
    if (w.lambda) chk(*w.lambda, "fine decay");
}

bool same_label(const std::optional<GDClass>& a, const std::optional<GDClass>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || a->label() == b->label();
}

}  // namespace

ApproxPair attach(const RealPtr& x, const std::vector<Int>& denoms, unsigned bits) {
    if (!x) raise("BadArgument", "attach needs a real source");
    if (bits < 16) raise("BadArgument", "attach needs at least 16 precision bits");
    ApproxPair p;
    p.x = x;
    p.precisionBits = bits;
    auto xr = x->exact_rational();
    auto xs = x->exact_surd();
    for (size_t j = 0; j < denoms.size(); ++j) {
        const Int& n = denoms[j];
        if (n == 0) raise("BadArgument", "pair denominators must be nonzero");
        Int m;
        if (xr) {
            bool tie = false;
            m = round_half_even(Rat(n) * *xr, &tie);
            if (tie) p.tieIndices.push_back(j);
        } else if (xs) {
            Surd shifted = (*xs * Rat(n)) + Rat(1, 2);
            m = shifted.floor_int();
            if ((shifted - Rat(m)).sign() == 0) {
                // exact half-integer: the two candidates are m-1 and m
                if (m % 2 != 0) m -= 1;
                p.tieIndices.push_back(j);
            }
        } else {
            bool done = false;
            for (unsigned b = std::max(bits, 64u); !done; b *= 2) {
                Interval v = Interval(Rat(n)) * x->enclose(b);
                Int mlo = floor_rat(v.lo + Rat(1, 2));
                Int mhi = floor_rat(v.hi + Rat(1, 2));
                if (mlo == mhi) {
                    m = mlo;
                    done = true;
                } else if (b >= precision_cap()) {
                    raise("PrecisionExhausted",
                          "nearest integer sits on a half-integer boundary at the precision cap");
                }
            }
        }
        p.denoms.push_back(n);
        p.numers.push_back(m);
    }
    for (size_t j = 0; j < p.denoms.size(); ++j)
        p.errors.push_back(pair_error(x, p.denoms[j], p.numers[j], bits));
    return p;
}

Interval pair_error_at(const ApproxPair& p, size_t idx, unsigned bits) {
    if (idx >= p.denoms.size()) raise("IndexOutOfRange", "pair index out of range");
    return pair_error(p.x, p.denoms[idx], p.numers[idx], bits);
}

FiltrationWindow swap_window(const FiltrationWindow& w) {
    return FiltrationWindow{w.nu, w.mu, w.lambda, w.iota};
}

bool windows_swapped(const FiltrationWindow& a, const FiltrationWindow& b) {
    return a.mu.label() == b.nu.label() && a.nu.label() == b.mu.label() &&
           same_label(a.iota, b.lambda) && same_label(a.lambda, b.iota);
}

Verdict membership(const ApproxPair& p, const FiltrationWindow& w, size_t depth) {
    check_window_classes(w);
    if (depth == 0) raise("BadArgument", "membership needs a positive depth");
    size_t d = std::min(depth, p.denoms.size());
    if (d == 0)
        return Verdict{VerdictValue::EQUIVALENT, 0, "empty pair is a member of every window"};
    size_t tail = d / 2 + 1;

    auto scaled = [&](size_t i, unsigned b) {
        return Interval(Rat(iabs(p.denoms[i - 1]))) * w.mu.term(i, b);
    };
    auto err = [&](size_t i, unsigned b) {
        return abs_i(pair_error(p.x, p.denoms[i - 1], p.numers[i - 1], b));
    };

    bool growthOk = false;
    Cert down = tail_escape(scaled, tail, d, true);
    if (down == Cert::Yes) {
        growthOk = true;
    } else if (tail_escape(scaled, tail, d, false) == Cert::Yes) {
        return Verdict{VerdictValue::GREATER, d,
                       "scaled growth escapes upward across the tail half"};
    }

    bool decayOk = true;
    std::string pending;
    auto check_below = [&](const std::function<Interval(size_t, unsigned)>& lhs,
                           const GDClass& cls, size_t i, bool strict) {
        return decide_cert([&](unsigned b) {
            Interval l = lhs(i, b), r = cls.term(i, b);
            return strict ? cert_lt(l, r) : cert_le(l, r);
        });
    };
    for (size_t i = tail; i <= d; ++i) {
        Cert c = check_below(err, w.nu, i, false);
        if (c == Cert::No)
            return Verdict{VerdictValue::GREATER, d,
                           "error certifiably above the decay class at i=" + std::to_string(i)};
        if (c == Cert::Unknown && pending.empty()) {
            decayOk = false;
            pending = "decay comparison undecided at i=" + std::to_string(i);
        }
        if (w.iota) {
            Cert f = check_below(scaled, *w.iota, i, true);
            if (f == Cert::No)
                return Verdict{VerdictValue::GREATER, d,
                               "scaled growth certifiably above the fine class at i=" +
                                   std::to_string(i)};
            if (f == Cert::Unknown && pending.empty()) {
                decayOk = false;
                pending = "fine growth comparison undecided at i=" + std::to_string(i);
            }
        }
        if (w.lambda) {
            Cert f = check_below(err, *w.lambda, i, false);
            if (f == Cert::No)
                return Verdict{VerdictValue::GREATER, d,
                               "error certifiably above the fine decay class at i=" +
                                   std::to_string(i)};
            if (f == Cert::Unknown && pending.empty()) {
                decayOk = false;
                pending = "fine decay comparison undecided at i=" + std::to_string(i);
            }
        }
    }

    if (growthOk && decayOk)
        return Verdict{VerdictValue::EQUIVALENT, d,
                       "scaled growth escapes downward and errors sit inside the decay class "
                       "across the tail half"};
    if (!growthOk && pending.empty())
        pending = "growth escape undecided across the tail half";
    return Verdict{VerdictValue::UNDECIDED, d, pending};
}

ApproxPair dual(const ApproxPair& p) {
    if (!p.x) raise("BadArgument", "dual needs an attached pair");
    ApproxPair q;
    q.x = make_reciprocal(p.x);
    q.precisionBits = p.precisionBits;
    std::vector<size_t> orig;
    for (size_t j = 0; j < p.denoms.size(); ++j) {
        if (p.numers[j] == 0) {
            q.skippedIndices.push_back(j);
            continue;
        }
        q.denoms.push_back(p.numers[j]);
        q.numers.push_back(p.denoms[j]);
        orig.push_back(j);
    }
    for (size_t k = 0; k < q.denoms.size(); ++k) {
        q.errors.push_back(pair_error(q.x, q.denoms[k], q.numers[k], q.precisionBits));
        size_t j = orig[k];
        Interval expect = with_refinement(
            [&](unsigned b) {
                Interval e = pair_error(p.x, p.denoms[j], p.numers[j], b);
                return -e / p.x->enclose(b);
            },
            q.precisionBits);
        require_overlap(q.errors[k], expect, "reciprocal error law");
    }
    return q;
}

ApproxPair pgl2_act(const Matrix2& A, const ApproxPair& p) {
    if (!p.x) raise("BadArgument", "action needs an attached pair");
    Int det = A.a * A.d - A.b * A.c;
    if (det != 1 && det != -1)
        raise("NotUnimodular", "action matrix must have determinant +1 or -1");
    ApproxPair q;
    q.x = make_moebius(p.x, A.a, A.b, A.c, A.d);
    q.precisionBits = p.precisionBits;
    std::vector<size_t> orig;
    for (size_t j = 0; j < p.denoms.size(); ++j) {
        Int dn = A.c * p.numers[j] + A.d * p.denoms[j];
        Int nm = A.a * p.numers[j] + A.b * p.denoms[j];
        if (dn == 0) {
            q.skippedIndices.push_back(j);
            continue;
        }
        q.denoms.push_back(dn);
        q.numers.push_back(nm);
        orig.push_back(j);
    }
    for (size_t k = 0; k < q.denoms.size(); ++k) {
        q.errors.push_back(pair_error(q.x, q.denoms[k], q.numers[k], q.precisionBits));
        size_t j = orig[k];
        // eps' = det(A) * eps / (c x + d); the determinant sign is forced by
        // the inversion [[0,1],[1,0]] agreeing with dual.
        Interval expect = with_refinement(
            [&](unsigned b) {
                Interval e = pair_error(p.x, p.denoms[j], p.numers[j], b);
                Interval den = Interval(Rat(A.c)) * p.x->enclose(b) + Interval(Rat(A.d));
                return Interval(Rat(det)) * e / den;
            },
            q.precisionBits);
        require_overlap(q.errors[k], expect, "fractional-linear error law");
    }
    return q;
}

ComposeResult ideo_compose(const ApproxPair& pA, const ApproxPair& pB,
                           const FiltrationWindow& wA, const FiltrationWindow& wB,
                           size_t depth) {
    if (!pA.x || !pB.x) raise("BadArgument", "composition needs two attached pairs");
    if (!windows_swapped(wA, wB))
        raise("WindowMismatch", "composition windows must trade growth and decay roles");
    size_t d = std::min({depth, pA.denoms.size(), pB.denoms.size()});
    if (d == 0) raise("BadArgument", "composition needs at least one shared index");

    Verdict mA = membership(pA, wA, depth);
    Verdict mB = membership(pB, wB, depth);
    if (mA.value == VerdictValue::GREATER)
        raise("MembershipFailed", "left pair certifiably violates its window: " + mA.witness);
    if (mB.value == VerdictValue::GREATER)
        raise("MembershipFailed", "right pair certifiably violates its window: " + mB.witness);

    unsigned bits = std::max(pA.precisionBits, pB.precisionBits);
    ComposeResult out{ApproxPair{}, ApproxPair{}, ApproxPair{},
                      Verdict{VerdictValue::UNDECIDED, d, ""}};
    out.product.x = make_product(pA.x, pB.x);
    out.sum.x = make_sum(pA.x, pB.x);
    out.difference.x = make_difference(pA.x, pB.x);
    out.product.precisionBits = out.sum.precisionBits = out.difference.precisionBits = bits;

    for (size_t j = 0; j < d; ++j) {
        const Int &m = pA.denoms[j], &mp = pA.numers[j];
        const Int &n = pB.denoms[j], &np = pB.numers[j];
        out.product.denoms.push_back(m * n);
        out.product.numers.push_back(mp * np);
        out.sum.denoms.push_back(m * n);
        out.sum.numers.push_back(mp * n + m * np);
        out.difference.denoms.push_back(m * n);
        out.difference.numers.push_back(mp * n - m * np);
    }
    for (size_t j = 0; j < d; ++j) {
        out.product.errors.push_back(
            pair_error(out.product.x, out.product.denoms[j], out.product.numers[j], bits));
        out.sum.errors.push_back(
            pair_error(out.sum.x, out.sum.denoms[j], out.sum.numers[j], bits));
        out.difference.errors.push_back(pair_error(out.difference.x, out.difference.denoms[j],
                                                   out.difference.numers[j], bits));

        Interval em = pair_error(pA.x, pA.denoms[j], pA.numers[j], bits);
        Interval en = pair_error(pB.x, pB.denoms[j], pB.numers[j], bits);
        Interval mP(Rat(pA.numers[j])), nP(Rat(pB.numers[j]));
        Interval mI(Rat(pA.denoms[j])), nI(Rat(pB.denoms[j]));
        require_overlap(out.product.errors[j], em * en + em * nP + en * mP,
                        "product error identity");
        require_overlap(out.sum.errors[j], nI * em + mI * en, "sum error identity");
        require_overlap(out.difference.errors[j], nI * em - mI * en,
                        "difference error identity");
    }

    if (mA.value == VerdictValue::UNDECIDED || mB.value == VerdictValue::UNDECIDED) {
        out.verdict = Verdict{VerdictValue::UNDECIDED, d,
                              std::string("membership undecided for the ") +
                                  (mA.value == VerdictValue::UNDECIDED ? "left" : "right") +
                                  " pair: " +
                                  (mA.value == VerdictValue::UNDECIDED ? mA.witness : mB.witness)};
        return out;
    }

    auto perr = [&](size_t i, unsigned b) {
        return abs_i(
            pair_error(out.product.x, out.product.denoms[i - 1], out.product.numers[i - 1], b));
    };
    size_t tail = d / 2 + 1;
    Cert down = tail_escape(perr, tail, d, true);
    if (down == Cert::Yes) {
        out.verdict = Verdict{VerdictValue::EQUIVALENT, d,
                              "composed errors escape downward across the tail half"};
    } else if (tail_escape(perr, tail, d, false) == Cert::Yes) {
        out.verdict = Verdict{VerdictValue::GREATER, d,
                              "composed errors escape upward across the tail half"};
    } else {
        out.verdict = Verdict{VerdictValue::UNDECIDED, d,
                              "composed error decay undecided across the tail half"};
    }
    return out;
}

std::vector<size_t> escape_selection(const std::vector<Int>& quots, size_t maxN) {
    std::vector<size_t> out;
    if (quots.size() < 3) return out;
    size_t last = std::min(maxN, quots.size() - 2);
    Int running = 0;
    for (size_t n = 1; n <= last; ++n) {
        running = std::max(running, quots[n]);
        if (quots[n + 1] >= 2 * running) out.push_back(n);
    }
    return out;
}

namespace {

struct SelectionLadder {
    std::shared_ptr<std::vector<Convergent>> lad;
    std::shared_ptr<std::vector<size_t>> sel;
};

size_t selected_index(const SelectionLadder& s, size_t rank) {
    if (rank == 0 || rank > s.sel->size())
        raise("IndexOutOfRange", "selection has only " + std::to_string(s.sel->size()) +
                                     " ranks, asked for " + std::to_string(rank));
    return (*s.sel)[rank - 1];
}

GDClass recip_denom_class(const SelectionLadder& s, bool successor, const std::string& label) {
    return GDClass(
        [s, successor](size_t i, unsigned) {
            size_t n = selected_index(s, i) + (successor ? 1 : 0);
            return Interval(Rat(Int(1), (*s.lad)[n].q));
        },
        GDTag::Infinitesimal, label);
}

std::vector<size_t> parse_selector(const std::string& selector, size_t depth,
                                   const std::vector<Int>& quots) {
    if (selector == "all") {
        std::vector<size_t> out;
        for (size_t n = 1; n <= depth; ++n) out.push_back(n);
        return out;
    }
    if (selector == "escape") return escape_selection(quots, depth);
    auto parse_sizes = [&](const std::string& body) {
        std::vector<size_t> vals;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                raise("MalformedSpec", "selector index is not a positive integer: " + tok);
            vals.push_back(static_cast<size_t>(std::stoull(tok)));
        }
        if (vals.empty()) raise("MalformedSpec", "selector needs at least one index");
        return vals;
    };
    if (selector.rfind("list:", 0) == 0) {
        auto vals = parse_sizes(selector.substr(5));
        for (size_t k = 0; k < vals.size(); ++k) {
            if (vals[k] < 1 || vals[k] > depth)
                raise("BadArgument", "selection index outside the window: " +
                                         std::to_string(vals[k]));
            if (k > 0 && vals[k] <= vals[k - 1])
                raise("BadArgument", "selection indices must be strictly increasing");
        }
        return vals;
    }
    if (selector.rfind("stride:", 0) == 0) {
        auto vals = parse_sizes(selector.substr(7));
        if (vals.size() != 2) raise("MalformedSpec", "stride selector wants start,step");
        size_t a = vals[0], st = vals[1];
        if (a < 1 || st < 1) raise("BadArgument", "stride start and step must be positive");
        std::vector<size_t> out;
        for (size_t n = a; n <= depth; n += st) out.push_back(n);
        return out;
    }
    raise("MalformedSpec", "unknown selector: " + selector);
}

}  // namespace

BestInterval best_interval(const RealPtr& x, const std::string& selector, size_t depth) {
    if (!x) raise("BadArgument", "best-interval needs a real source");
    if (depth < 1) raise("BadArgument", "best-interval needs a positive depth");
    if (x->exact_rational())
        raise("RationalInput", "best subsequences are about irrational targets");
    auto quots = x->quotients(depth + 2);
    if (quots.size() < depth + 2)
        raise("RationalTerminated", "quotient stream terminates inside the window");
    auto selection = parse_selector(selector, depth, quots);
    if (selection.empty())
        raise("EmptySelection", "selector picked no convergents on this window");

    SelectionLadder s{
        std::make_shared<std::vector<Convergent>>(convergents_from_quotients(quots)),
        std::make_shared<std::vector<size_t>>(selection)};
    RealPtr xs = x;
    std::string tagStr = x->describe() + ";" + selector;
    GDClass nuBreve(
        [xs, s](size_t i, unsigned bits) {
            const Convergent& c = (*s.lad)[selected_index(s, i)];
            return abs_i(pair_error(xs, c.q, c.p, bits));
        },
        GDTag::Infinitesimal, "nubreve(" + tagStr + ")");
    GDClass muBreve = recip_denom_class(s, false, "mubreve(" + tagStr + ")");

    Verdict ipq{VerdictValue::UNDECIDED, selection.size(),
                "selection too short to certify successor escape"};
    if (selection.size() >= 2) {
        bool increasing = true;
        for (size_t k = 0; k + 1 < selection.size(); ++k)
            increasing = increasing && quots[selection[k + 1] + 1] > quots[selection[k] + 1];
        if (increasing && quots[selection.back() + 1] >= 2 * quots[selection.front() + 1])
            ipq = Verdict{VerdictValue::EQUIVALENT, selection.size(),
                          "selected successor quotients escape upward"};
        else if (!increasing)
            ipq = Verdict{VerdictValue::GREATER, selection.size(),
                          "successor quotients certifiably fail to escape"};
        else
            ipq = Verdict{VerdictValue::UNDECIDED, selection.size(),
                          "successor growth too weak to certify an escape"};
    }
    return BestInterval{nuBreve, muBreve, ipq, selection};
}

const char* to_string(FlatValue v) {
    switch (v) {
        case FlatValue::COMPOSABLE: return "COMPOSABLE";
        case FlatValue::INCOMPOSABLE: return "INCOMPOSABLE";
        default: return "UNDECIDED";
    }
}

FlatResult flat_composable(const RealPtr& x, const RealPtr& y, size_t depth) {
    if (!x || !y) raise("BadArgument", "flat comparison needs two real sources");
    if (depth < 2) raise("BadArgument", "flat comparison needs depth >= 2");
    if (x->exact_rational() || y->exact_rational())
        raise("RationalInput", "flat composition is about irrational targets");
    auto qx = x->quotients(depth + 2);
    auto qy = y->quotients(depth + 2);
    if (qx.size() < depth + 2 || qy.size() < depth + 2)
        raise("RationalTerminated", "quotient stream terminates inside the window");

    auto ex = escape_selection(qx, depth);
    auto ey = escape_selection(qy, depth);
    if (ex.empty() && ey.empty())
        return FlatResult{FlatValue::INCOMPOSABLE, depth,
                          "both streams are quotient-bounded on the window (no escape events)"};
    if (ex.empty() || ey.empty())
        return FlatResult{FlatValue::UNDECIDED, depth,
                          "only one stream shows escape events on this window"};

    size_t L = std::min(ex.size(), ey.size());
    if (L < 2)
        return FlatResult{FlatValue::UNDECIDED, depth,
                          "too few aligned escape events to compare"};
    ex.resize(L);
    ey.resize(L);

    SelectionLadder sx{std::make_shared<std::vector<Convergent>>(convergents_from_quotients(qx)),
                       std::make_shared<std::vector<size_t>>(ex)};
    SelectionLadder sy{std::make_shared<std::vector<Convergent>>(convergents_from_quotients(qy)),
                       std::make_shared<std::vector<size_t>>(ey)};
    GDClass mux = recip_denom_class(sx, false, "mubreve(" + x->describe() + ")");
    GDClass muxp = recip_denom_class(sx, true, "mubreve+(" + x->describe() + ")");
    GDClass muy = recip_denom_class(sy, false, "mubreve(" + y->describe() + ")");
    GDClass muyp = recip_denom_class(sy, true, "mubreve+(" + y->describe() + ")");

    const Rat bound(65536);
    auto cmp = [&](const GDClass& u, const GDClass& v) {
        return compare_class_at(u, v, L, bound).value;
    };
    auto below = [](VerdictValue v) {
        return v == VerdictValue::LESS || v == VerdictValue::EQUIVALENT;
    };

    // Branch: the left stream's events interleave inside the right stream's.
    VerdictValue c1 = cmp(muxp, muyp), c2 = cmp(muyp, mux);
    bool b1true = below(c1) && c2 == VerdictValue::LESS;
    bool b1false = c1 == VerdictValue::GREATER || c2 == VerdictValue::GREATER ||
                   c2 == VerdictValue::EQUIVALENT;
    VerdictValue c3 = cmp(muyp, muxp), c4 = cmp(muxp, muy);
    bool b2true = below(c3) && c4 == VerdictValue::LESS;
    bool b2false = c3 == VerdictValue::GREATER || c4 == VerdictValue::GREATER ||
                   c4 == VerdictValue::EQUIVALENT;

    std::string events = std::to_string(L) + " aligned escape events";
    if (b1true)
        return FlatResult{FlatValue::COMPOSABLE, depth,
                          "left escape denominators interleave inside the right stream's (" +
                              events + ")"};
    if (b2true)
        return FlatResult{FlatValue::COMPOSABLE, depth,
                          "right escape denominators interleave inside the left stream's (" +
                              events + ")"};
    if (b1false && b2false)
        return FlatResult{FlatValue::INCOMPOSABLE, depth,
                          "both interleaving orders certifiably fail (" + events + ")"};
    return FlatResult{FlatValue::UNDECIDED, depth,
                      "interleaving comparisons undecided (" + events + ")"};
}

StreamReport classify_stream(const RealPtr& x, size_t depth) {
    if (!x) raise("BadArgument", "stream classification needs a real source");
    if (depth < 4) raise("BadArgument", "stream classification needs depth >= 4");
    if (x->exact_rational())
        raise("RationalInput", "stream classification is about irrational targets");
    auto quots = x->quotients(depth + 2);
    if (quots.size() < depth + 2)
        raise("RationalTerminated", "quotient stream terminates inside the window");
    auto lad = convergents_from_quotients(quots);

    Int maxQ = 0;
    for (size_t i = 1; i <= depth; ++i) maxQ = std::max(maxQ, quots[i]);

    size_t tail = depth / 2 + 1;
    auto events = escape_selection(quots, depth);
    bool escaping = false;
    for (size_t n : events) escaping = escaping || n >= tail;

    bool resolute = true;
    Int running = 0;
    for (size_t i = 1; i < tail; ++i) running = std::max(running, quots[i]);
    for (size_t i = tail; i <= depth; ++i) {
        if (quots[i] < 2 * running) {
            resolute = false;
            break;
        }
        running = std::max(running, quots[i]);
    }

    std::vector<size_t> runs;
    size_t cur = 0;
    for (size_t i = 1; i <= depth; ++i) {
        if (quots[i] <= 2) {
            ++cur;
        } else {
            if (cur > 0) runs.push_back(cur);
            cur = 0;
        }
    }
    if (cur > 0) runs.push_back(cur);
    bool abyssal = runs.size() >= 3;
    for (size_t k = 0; abyssal && k + 1 < runs.size(); ++k)
        abyssal = runs[k] < runs[k + 1];
    abyssal = abyssal && runs.size() >= 3 && runs.back() >= 2 * runs.front();

    // kappa from the two-sided convergent sandwich 1/(q_{i+1}+q_i) < |e_i| <
    // 1/q_{i+1}; only the integer ladder is needed.  Early convergents with
    // tiny denominators inflate the exponent, so the reported estimate is the
    // tail-half maximum; the first-half maximum only feeds the growth test.
    Interval firstHalf, secondHalf;
    bool haveFirst = false, haveSecond = false;
    for (size_t i = 1; i <= depth; ++i) {
        if (lad[i].q < 2) continue;
        Interval inv(Rat(lad[i + 1].q), Rat(lad[i + 1].q + lad[i].q));
        Interval k = log2_i(inv, 64) / log2_i(Interval(Rat(lad[i].q)), 64);
        auto fold = [&](Interval& acc, bool& seen) {
            if (!seen) {
                acc = k;
                seen = true;
            } else {
                acc = Interval(std::max(acc.lo, k.lo), std::max(acc.hi, k.hi));
            }
        };
        if (i < tail)
            fold(firstHalf, haveFirst);
        else
            fold(secondHalf, haveSecond);
    }
    Interval kmax = haveSecond ? secondHalf : (haveFirst ? firstHalf : Interval(Rat(1)));
    bool liouville = haveFirst && haveSecond && cert_gt(secondHalf, firstHalf) == Cert::Yes;

    return StreamReport{maxQ, escaping, resolute, abyssal, kmax, liouville};
}

IncomposablePair build_incomposable_pair(const BlockPairSeed& seed) {
    IncomposablePair out;
    out.first = make_blockpair_side(seed, 'A');
    out.second = make_blockpair_side(seed, 'B');
    out.certs = blockpair_quotients(seed, 128).certs;
    return out;
}

}  // namespace ideoarith
