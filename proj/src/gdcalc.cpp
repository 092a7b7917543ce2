#include "ideoarith/gdcalc.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ideoarith/error.hpp"
#include "ideoarith/reals.hpp"

namespace ideoarith {

const char* to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::LESS: return "LESS";
        case VerdictValue::GREATER: return "GREATER";
        case VerdictValue::EQUIVALENT: return "EQUIVALENT";
        default: return "UNDECIDED";
    }
}

GDClass::GDClass(Term term, GDTag tag, std::string label)
    : term_(std::move(term)), tag_(tag), label_(std::move(label)) {}

Interval GDClass::term(size_t i, unsigned bits) const {
    if (i == 0) raise("BadArgument", "class terms are 1-indexed");
    Interval t = term_(i, bits);
    if (t.hi <= 0)
        raise("NonPositiveTerm",
              label_ + " term " + std::to_string(i) + " is not positive");
    return t;
}

namespace {

constexpr unsigned kBaseBits = 96;

// Escalating certification up to the precision cap; nullopt when the cap
// cannot decide.
std::optional<bool> decide(const std::function<Cert(unsigned)>& f) {
    unsigned cap = precision_cap();
    for (unsigned bits = kBaseBits;; bits *= 2) {
        Cert c = f(bits);
        if (c == Cert::Yes) return true;
        if (c == Cert::No) return false;
        if (bits > cap) return std::nullopt;
    }
}

// Term enclosure once it is certified positive; nullopt asks for more bits.
std::optional<Interval> positive_term(const GDClass& u, size_t i, unsigned bits) {
    Interval t = u.term(i, bits);
    if (t.lo <= 0) return std::nullopt;
    return t;
}

// Declared infinitesimal/infinite intent is checked on the tail half of every
// tested window: a term certified on the wrong side of 1 is a lie.
void monitor_tag(const GDClass& u, size_t depth) {
    if (u.tag() == GDTag::Unit) return;
    Interval one{Rat(1)};
    for (size_t i = depth / 2 + 1; i <= depth; ++i) {
        Interval t = u.term(i, kBaseBits);
        bool bad = u.tag() == GDTag::Infinitesimal ? cert_ge(t, one) == Cert::Yes
                                                   : cert_le(t, one) == Cert::Yes;
        if (bad)
            raise("TagViolation", u.label() + " term " + std::to_string(i) +
                                      " contradicts its declared tag");
    }
}

using RatioFn = std::function<std::optional<Interval>(size_t i, unsigned bits)>;

struct Classified {
    VerdictValue value;
    std::string witness;
};

// Shared decision core: certified monotone escape (total factor >= 3/2 across
// the used indices) wins first, then the [1/bound, bound] band, else
// UNDECIDED. `idx` lists the 1-based sequence indices in play.
Classified classify_escape_then_band(const RatioFn& ratio,
                                     const std::vector<size_t>& idx,
                                     const Rat& bound) {
    std::string note;
    if (idx.size() >= 2) {
        for (int dir = 0; dir < 2; ++dir) {
            const bool dec = dir == 0;
            bool mono = true;
            for (size_t j = 0; mono && j + 1 < idx.size(); ++j) {
                auto r = decide([&](unsigned bits) -> Cert {
                    auto a = ratio(idx[j], bits), b = ratio(idx[j + 1], bits);
                    if (!a || !b) return Cert::Unknown;
                    return dec ? cert_gt(*a, *b) : cert_lt(*a, *b);
                });
                if (!r) {
                    note = "monotonicity undecided at i=" + std::to_string(idx[j]);
                    mono = false;
                } else if (!*r) {
                    mono = false;
                }
            }
            if (!mono) continue;
            auto fac = decide([&](unsigned bits) -> Cert {
                auto a = ratio(idx.front(), bits), b = ratio(idx.back(), bits);
                if (!a || !b) return Cert::Unknown;
                Interval q = dec ? *a / *b : *b / *a;
                return cert_ge(q, Interval(Rat(3, 2)));
            });
            if (fac && *fac)
                return {dec ? VerdictValue::LESS : VerdictValue::GREATER,
                        std::string("strict ") + (dec ? "descent" : "ascent") +
                            " across the tail with total factor >= 3/2"};
        }
    }
    for (size_t j = 0; j < idx.size(); ++j) {
        auto in = decide([&](unsigned bits) -> Cert {
            auto r = ratio(idx[j], bits);
            if (!r) return Cert::Unknown;
            Cert lo = cert_ge(*r, Interval(Rat(1) / bound));
            Cert hi = cert_le(*r, Interval(bound));
            if (lo == Cert::No || hi == Cert::No) return Cert::No;
            if (lo == Cert::Yes && hi == Cert::Yes) return Cert::Yes;
            return Cert::Unknown;
        });
        if (!in)
            return {VerdictValue::UNDECIDED,
                    "band membership undecided at i=" + std::to_string(idx[j])};
        if (!*in)
            return {VerdictValue::UNDECIDED,
                    "ratio left the band at i=" + std::to_string(idx[j]) +
                        " without a certified escape"};
    }
    if (!note.empty()) return {VerdictValue::EQUIVALENT, "tail ratios within band; " + note};
    return {VerdictValue::EQUIVALENT,
            "tail ratios within [1/" + bound.str() + ", " + bound.str() + "]"};
}

std::vector<size_t> tail_half(size_t depth) {
    std::vector<size_t> idx;
    for (size_t i = depth / 2 + 1; i <= depth; ++i) idx.push_back(i);
    return idx;
}

void check_window_args(size_t depth, const Rat& bound) {
    if (depth < 8) raise("BadArgument", "verdict depth must be at least 8");
    if (bound <= 1) raise("BadArgument", "equivalence bound must exceed 1");
}

}  // namespace

Verdict compare_class(const GDClass& u, const GDClass& v, size_t depth,
                      const Rat& bound) {
    check_window_args(depth, bound);
    return compare_class_at(u, v, depth, bound);
}

Verdict compare_class_at(const GDClass& u, const GDClass& v, size_t depth,
                         const Rat& bound) {
    if (depth < 2) raise("BadArgument", "comparison needs at least two terms");
    if (bound <= 1) raise("BadArgument", "equivalence bound must exceed 1");
    monitor_tag(u, depth);
    monitor_tag(v, depth);
    RatioFn ratio = [&](size_t i, unsigned bits) -> std::optional<Interval> {
        auto a = positive_term(u, i, bits), b = positive_term(v, i, bits);
        if (!a || !b) return std::nullopt;
        return *a / *b;
    };
    Classified c = classify_escape_then_band(ratio, tail_half(depth), bound);
    return {c.value, depth, c.witness};
}

GDClass trop_combine(const GDClass& u, const GDClass& v, TropOp op) {
    GDTag a = u.tag(), b = v.tag(), t;
    const char* name;
    GDClass::Term f;
    switch (op) {
        case TropOp::Mul:
            name = "mul";
            t = a == GDTag::Unit ? b : (b == GDTag::Unit || a == b) ? a : GDTag::Unit;
            f = [u, v](size_t i, unsigned bits) { return u.term(i, bits) * v.term(i, bits); };
            break;
        case TropOp::Add:
            name = "max";
            t = (a == GDTag::Infinite || b == GDTag::Infinite) ? GDTag::Infinite
                : (a == GDTag::Infinitesimal && b == GDTag::Infinitesimal)
                    ? GDTag::Infinitesimal
                    : GDTag::Unit;
            f = [u, v](size_t i, unsigned bits) {
                Interval x = u.term(i, bits), y = v.term(i, bits);
                return Interval(std::max(x.lo, y.lo), std::max(x.hi, y.hi));
            };
            break;
        default:
            name = "min";
            t = (a == GDTag::Infinitesimal || b == GDTag::Infinitesimal)
                    ? GDTag::Infinitesimal
                : (a == GDTag::Infinite && b == GDTag::Infinite) ? GDTag::Infinite
                                                                 : GDTag::Unit;
            f = [u, v](size_t i, unsigned bits) {
                Interval x = u.term(i, bits), y = v.term(i, bits);
                return Interval(std::min(x.lo, y.lo), std::min(x.hi, y.hi));
            };
            break;
    }
    return GDClass(std::move(f), t,
                   std::string(name) + "(" + u.label() + "," + v.label() + ")");
}

Verdict frobenius_compare(const GDClass& u, const GDClass& v, size_t depth,
                          const Rat& bound) {
    check_window_args(depth, bound);
    monitor_tag(u, depth);
    monitor_tag(v, depth);
    Interval one{Rat(1)};
    // Indices where either term equals 1 carry no exponent information and
    // are skipped, up to a quarter of the window.
    auto not_one = [&](const GDClass& g, size_t i) {
        return decide([&](unsigned bits) -> Cert {
            Interval t = g.term(i, bits);
            if (cert_lt(t, one) == Cert::Yes || cert_gt(t, one) == Cert::Yes)
                return Cert::Yes;
            if (t.lo == t.hi) return Cert::No;
            return Cert::Unknown;
        });
    };
    std::vector<size_t> usable;
    size_t skipped = 0;
    for (size_t i : tail_half(depth)) {
        auto au = not_one(u, i), av = not_one(v, i);
        if (!au || !av)
            return {VerdictValue::UNDECIDED, depth,
                    "term indistinguishable from 1 at i=" + std::to_string(i)};
        if (*au && *av) usable.push_back(i);
        else ++skipped;
    }
    if (skipped > depth / 4)
        raise("LogOfUnit", std::to_string(skipped) +
                               " unit terms exceed the skip allowance of " +
                               std::to_string(depth / 4));
    RatioFn ratio = [&](size_t i, unsigned bits) -> std::optional<Interval> {
        Interval tu = u.term(i, bits), tv = v.term(i, bits);
        if (tu.lo <= 0 || tv.lo <= 0) return std::nullopt;
        if (tu.contains(1) || tv.contains(1)) return std::nullopt;
        Interval lu = log2_i(tu, bits), lv = log2_i(tv, bits);
        if (lu.contains_zero()) return std::nullopt;
        return lv / lu;
    };
    Classified c = classify_escape_then_band(ratio, usable, bound);
    return {c.value, depth, c.witness};
}

Verdict shift_invariant_verdict(const GDClass& u, size_t depth, const Rat& bound) {
    check_window_args(depth, bound);
    monitor_tag(u, depth);
    for (size_t i = 1; i + 1 <= depth; ++i) {
        auto ok = decide([&](unsigned bits) -> Cert {
            auto a = positive_term(u, i, bits), b = positive_term(u, i + 1, bits);
            if (!a || !b) return Cert::Unknown;
            return cert_ge(*a, *b);
        });
        if (ok && !*ok)
            raise("NotMonotone",
                  u.label() + " increases at i=" + std::to_string(i + 1));
        if (!ok)
            return {VerdictValue::UNDECIDED, depth,
                    "monotonicity undecided at i=" + std::to_string(i)};
    }
    RatioFn ratio = [&](size_t i, unsigned bits) -> std::optional<Interval> {
        auto a = positive_term(u, i, bits), b = positive_term(u, i + 1, bits);
        if (!a || !b) return std::nullopt;
        return *a / *b;
    };
    std::vector<size_t> idx;
    for (size_t i = depth / 2 + 1; i + 1 <= depth; ++i) idx.push_back(i);
    // Consecutive-ratio escape means no bound can work; the given bound
    // certifies invariance otherwise.
    if (idx.size() >= 2) {
        bool mono = true;
        for (size_t j = 0; mono && j + 1 < idx.size(); ++j) {
            auto r = decide([&](unsigned bits) -> Cert {
                auto a = ratio(idx[j], bits), b = ratio(idx[j + 1], bits);
                if (!a || !b) return Cert::Unknown;
                return cert_lt(*a, *b);
            });
            mono = r && *r;
        }
        if (mono) {
            auto fac = decide([&](unsigned bits) -> Cert {
                auto a = ratio(idx.front(), bits), b = ratio(idx.back(), bits);
                if (!a || !b) return Cert::Unknown;
                return cert_ge(*b / *a, Interval(Rat(3, 2)));
            });
            if (fac && *fac)
                return {VerdictValue::GREATER, depth,
                        "consecutive ratios escape upward across the tail"};
        }
    }
    for (size_t i : idx) {
        auto in = decide([&](unsigned bits) -> Cert {
            auto r = ratio(i, bits);
            if (!r) return Cert::Unknown;
            return cert_le(*r, Interval(bound));
        });
        if (!in)
            return {VerdictValue::UNDECIDED, depth,
                    "consecutive ratio undecided at i=" + std::to_string(i)};
        if (!*in)
            return {VerdictValue::UNDECIDED, depth,
                    "consecutive ratio exceeds the bound at i=" + std::to_string(i) +
                        " without a certified escape"};
    }
    return {VerdictValue::EQUIVALENT, depth,
            "consecutive tail ratios stay within " + bound.str()};
}

GDClass gd_pow(const Rat& b) {
    if (b <= 0) raise("BadArgument", "power base must be positive");
    GDTag t = b > 1 ? GDTag::Infinitesimal : b == 1 ? GDTag::Unit : GDTag::Infinite;
    Rat r = Rat(1) / b;
    return GDClass(
        [r](size_t i, unsigned) { return Interval(pow_rat(r, static_cast<long>(i))); },
        t, "seq:pow:" + b.str());
}

GDClass gd_poly(long k) {
    GDTag t = k > 0 ? GDTag::Infinitesimal : k == 0 ? GDTag::Unit : GDTag::Infinite;
    return GDClass(
        [k](size_t i, unsigned) {
            return Interval(pow_rat(Rat(static_cast<unsigned long>(i)), -k));
        },
        t, "seq:poly:" + std::to_string(k));
}

GDClass gd_from_function(std::function<Rat(size_t)> f, GDTag tag, std::string label) {
    return GDClass(
        [f = std::move(f)](size_t i, unsigned) { return Interval(f(i)); }, tag,
        std::move(label));
}

namespace {

// Tiny arithmetic expressions over i for seq:factored.
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' digits]
//   atom   := digits | 'i' | '(' expr ')' | '-' factor
using ExprFn = std::function<Rat(const Rat&)>;

struct ExprParser {
    const std::string& s;
    size_t pos = 0;

    explicit ExprParser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    ExprFn parse() {
        ExprFn e = expr();
        skip();
        if (pos != s.size())
            raise("MalformedSpec", "trailing characters in expression: " + s.substr(pos));
        return e;
    }

    ExprFn expr() {
        ExprFn acc = term();
        for (;;) {
            if (eat('+')) {
                ExprFn rhs = term();
                acc = [acc, rhs](const Rat& i) { return acc(i) + rhs(i); };
            } else if (eat('-')) {
                ExprFn rhs = term();
                acc = [acc, rhs](const Rat& i) { return acc(i) - rhs(i); };
            } else {
                return acc;
            }
        }
    }

    ExprFn term() {
        ExprFn acc = factor();
        for (;;) {
            if (eat('*')) {
                ExprFn rhs = factor();
                acc = [acc, rhs](const Rat& i) { return acc(i) * rhs(i); };
            } else if (eat('/')) {
                ExprFn rhs = factor();
                acc = [acc, rhs](const Rat& i) {
                    Rat d = rhs(i);
                    if (d == 0) raise("DivisionByZero", "expression divisor vanished");
                    return acc(i) / d;
                };
            } else {
                return acc;
            }
        }
    }

    ExprFn factor() {
        ExprFn base = atom();
        if (eat('^')) {
            skip();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) raise("MalformedSpec", "exponent expected after ^");
            if (pos - start > 4) raise("MalformedSpec", "exponent too large");
            long e = std::stol(s.substr(start, pos - start));
            if (e > 1024) raise("MalformedSpec", "exponent too large");
            return [base, e](const Rat& i) { return pow_rat(base(i), e); };
        }
        return base;
    }

    ExprFn atom() {
        skip();
        if (pos >= s.size()) raise("MalformedSpec", "expression ended early");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            ExprFn e = expr();
            if (!eat(')')) raise("MalformedSpec", "missing )");
            return e;
        }
        if (c == '-') {
            ++pos;
            ExprFn e = factor();
            return [e](const Rat& i) { return -e(i); };
        }
        if (c == 'i') {
            ++pos;
            return [](const Rat& i) { return i; };
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Rat v{Int(s.substr(start, pos - start))};
            return [v](const Rat&) { return v; };
        }
        raise("MalformedSpec", std::string("unexpected character '") + c + "' in expression");
    }
};

Rat parse_rat_field(const std::string& text) {
    if (text.empty()) raise("MalformedSpec", "empty rational");
    size_t slash = text.find('/');
    auto check_int = [](const std::string& t) {
        if (t.empty()) raise("MalformedSpec", "empty integer");
        size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (k == t.size()) raise("MalformedSpec", "sign without digits");
        for (; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k])))
                raise("MalformedSpec", "not an integer: " + t);
        return Int(t);
    };
    if (slash == std::string::npos) return Rat(check_int(text));
    Int d = check_int(text.substr(slash + 1));
    if (d == 0) raise("MalformedSpec", "zero denominator");
    return Rat(check_int(text.substr(0, slash)), d);
}

// Convergent ladder of a source, extended and memoized on demand.
struct LadderCache {
    RealPtr x;
    std::mutex m;
    std::vector<Convergent> c;

    explicit LadderCache(RealPtr src) : x(std::move(src)) {}

    Convergent at(size_t i) {
        std::lock_guard<std::mutex> g(m);
        if (c.size() <= i) c = convergents(x, i + 1);
        return c[i];
    }
};

}  // namespace

GDClass make_class(const std::string& spec) {
    const std::string pow = "seq:pow:", poly = "seq:poly:",
                      fact = "seq:factored:", pair = "seq:from-pair:",
                      recip = "seq:recip-denoms:";
    if (spec.rfind(pow, 0) == 0) return gd_pow(parse_rat_field(spec.substr(pow.size())));
    if (spec.rfind(poly, 0) == 0) {
        Rat k = parse_rat_field(spec.substr(poly.size()));
        if (den(k) != 1 || abs(num(k)) > 64)
            raise("MalformedSpec", "poly exponent must be a small integer");
        return gd_poly(static_cast<long>(num(k)));
    }
    if (spec.rfind(fact, 0) == 0) {
        std::string body = spec.substr(fact.size());
        ExprParser p(body);
        ExprFn f = p.parse();
        return GDClass(
            [f](size_t i, unsigned) {
                return Interval(f(Rat(static_cast<unsigned long>(i))));
            },
            GDTag::Unit, spec);
    }
    if (spec.rfind(pair, 0) == 0) {
        auto cache = std::make_shared<LadderCache>(make_source(spec.substr(pair.size())));
        return GDClass(
            [cache](size_t i, unsigned bits) {
                Convergent c = cache->at(i);
                return abs_i(pair_error(cache->x, c.q, c.p, bits));
            },
            GDTag::Infinitesimal, spec);
    }
    if (spec.rfind(recip, 0) == 0) {
        auto cache = std::make_shared<LadderCache>(make_source(spec.substr(recip.size())));
        return GDClass(
            [cache](size_t i, unsigned) {
                return Interval(Rat(1, cache->at(i).q));
            },
            GDTag::Infinitesimal, spec);
    }
    raise("MalformedSpec", "unknown class spec: " + spec);
}

}  // namespace ideoarith
