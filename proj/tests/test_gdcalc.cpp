#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <string>

#include "ideoarith/error.hpp"
#include "ideoarith/gdcalc.hpp"

using namespace ideoarith;

namespace {

const std::string kRoot = "\xE2\x88\x9A";  // the √ glyph

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const IdeoError& e) {
        return e.code();
    }
    return "";
}

Rat fact(size_t n) {
    Rat r = 1;
    for (size_t k = 2; k <= n; ++k) r *= static_cast<unsigned long>(k);
    return r;
}

// Point interval inside (lo, hi) given as decimal strings scaled by 10^-digits.
bool within(const Interval& t, long lo_scaled, long hi_scaled, long scale) {
    return t.lo > Rat(lo_scaled, scale) && t.hi < Rat(hi_scaled, scale);
}

}  // namespace

TEST_CASE("pinned order and equivalence verdicts") {
    GDClass a = gd_poly(1), b = gd_poly(2);
    GDClass a3 = gd_from_function([](size_t i) { return Rat(3, static_cast<unsigned long>(i)); },
                                  GDTag::Infinitesimal, "3/i");

    Verdict v = compare_class(a, a3, 64, Rat(10));
    CHECK(v.value == VerdictValue::EQUIVALENT);
    CHECK(v.depth == 64);

    CHECK(compare_class(b, a, 64, Rat(65536)).value == VerdictValue::LESS);
    CHECK(compare_class(a, b, 64, Rat(65536)).value == VerdictValue::GREATER);

    // Oscillating ratio: no order, out of band.
    GDClass u = gd_from_function(
        [](size_t i) { return i % 2 ? Rat(2, static_cast<unsigned long>(i))
                                    : Rat(1, static_cast<unsigned long>(i)); },
        GDTag::Unit, "alternating");
    GDClass w = gd_from_function(
        [](size_t i) { return i % 7 == 0 ? Rat(static_cast<unsigned long>(i))
                                         : Rat(1, static_cast<unsigned long>(i)); },
        GDTag::Unit, "spiked");
    Verdict und = compare_class(u, w, 64, Rat(10));
    CHECK(und.value == VerdictValue::UNDECIDED);
    CHECK(und.depth == 64);
    CHECK(!und.witness.empty());
}

TEST_CASE("escape outranks the band") {
    // Ratio 64/i stays inside [1/B, B] with B = 2^16 yet descends by a factor
    // of nearly 2 across the tail; the order verdict must win.
    GDClass u = gd_from_function(
        [](size_t i) { return Rat(64, static_cast<unsigned long>(i) * i); },
        GDTag::Infinitesimal, "64/i^2");
    Verdict v = compare_class(u, gd_poly(1), 64, Rat(65536));
    CHECK(v.value == VerdictValue::LESS);
    CHECK(v.witness.find("descent") != std::string::npos);
}

TEST_CASE("window argument guards") {
    CHECK(code_of([] { compare_class(gd_poly(1), gd_poly(2), 7, Rat(10)); }) == "BadArgument");
    CHECK(code_of([] { compare_class(gd_poly(1), gd_poly(2), 8, Rat(1)); }) == "BadArgument");
    CHECK(code_of([] {
              GDClass lying = gd_from_function([](size_t) { return Rat(2); },
                                               GDTag::Infinitesimal, "lying");
              compare_class(lying, gd_poly(1), 16, Rat(10));
          }) == "TagViolation");
}

TEST_CASE("tropical combinations collapse to the dominant class") {
    GDClass inv = gd_poly(1), inv2 = gd_poly(2), geo = gd_pow(2);

    CHECK(compare_class(trop_combine(inv, inv2, TropOp::Add), inv, 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
    CHECK(compare_class(trop_combine(inv, inv, TropOp::Mul), inv2, 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
    CHECK(compare_class(trop_combine(geo, inv, TropOp::Sub), geo, 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
}

TEST_CASE("distributivity holds pointwise on every window") {
    GDClass u = gd_poly(1), v = gd_pow(2);
    GDClass w = make_class("seq:factored:(i+1)/(i*i*i)");
    GDClass left = trop_combine(u, trop_combine(v, w, TropOp::Add), TropOp::Mul);
    GDClass right = trop_combine(trop_combine(u, v, TropOp::Mul),
                                 trop_combine(u, w, TropOp::Mul), TropOp::Add);
    for (size_t i = 1; i <= 64; ++i) {
        Interval l = left.term(i), r = right.term(i);
        CHECK(l.lo == r.lo);
        CHECK(l.hi == r.hi);
    }
}

TEST_CASE("min dominates the product for terms at most one") {
    GDClass u = gd_from_function([](size_t i) { return Rat(1, static_cast<unsigned long>(i) + 1); },
                                 GDTag::Infinitesimal, "1/(i+1)");
    GDClass v = gd_pow(2);
    GDClass mn = trop_combine(u, v, TropOp::Sub), pr = trop_combine(u, v, TropOp::Mul);
    for (size_t i = 1; i <= 64; ++i) {
        CHECK(mn.term(i).lo >= pr.term(i).hi);
    }
}

TEST_CASE("decided strict order is transitive on a fixed window") {
    GDClass c1 = gd_poly(1), c2 = gd_poly(2), c3 = gd_poly(3);
    Rat B(65536);
    CHECK(compare_class(c3, c2, 64, B).value == VerdictValue::LESS);
    CHECK(compare_class(c2, c1, 64, B).value == VerdictValue::LESS);
    CHECK(compare_class(c3, c1, 64, B).value == VerdictValue::LESS);
}

TEST_CASE("frobenius quotient identifies powers") {
    CHECK(frobenius_compare(gd_pow(2), gd_pow(4), 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
    CHECK(frobenius_compare(gd_pow(8), gd_pow(2), 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
    CHECK(frobenius_compare(gd_poly(1), gd_pow(2), 64, Rat(65536)).value ==
          VerdictValue::GREATER);

    GDClass sq = gd_from_function(
        [](size_t i) { return pow_rat(Rat(1, 2), static_cast<long>(i * i)); },
        GDTag::Infinitesimal, "2^-i^2");
    CHECK(frobenius_compare(gd_pow(2), sq, 16, Rat(65536)).value ==
          VerdictValue::GREATER);
}

TEST_CASE("unit terms are skipped up to the allowance") {
    CHECK(code_of([] { frobenius_compare(gd_pow(1), gd_pow(2), 64, Rat(4)); }) ==
          "LogOfUnit");

    GDClass mostly = gd_from_function(
        [](size_t i) {
            return i % 8 == 0 ? Rat(1) : pow_rat(Rat(1, 2), static_cast<long>(i));
        },
        GDTag::Unit, "mostly-geometric");
    CHECK(frobenius_compare(mostly, gd_pow(2), 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);
}

TEST_CASE("shift invariance separates geometric from factorial decay") {
    CHECK(shift_invariant_verdict(gd_pow(2), 64, Rat(4)).value ==
          VerdictValue::EQUIVALENT);

    GDClass sq = gd_from_function(
        [](size_t i) { return pow_rat(Rat(1, 2), static_cast<long>(i * i)); },
        GDTag::Infinitesimal, "2^-i^2");
    CHECK(shift_invariant_verdict(sq, 16, Rat(65536)).value == VerdictValue::GREATER);

    GDClass rf = gd_from_function([](size_t i) { return Rat(1) / fact(i); },
                                  GDTag::Infinitesimal, "1/i!");
    CHECK(shift_invariant_verdict(rf, 64, Rat(65536)).value == VerdictValue::GREATER);

    CHECK(code_of([] { shift_invariant_verdict(gd_poly(-1), 16, Rat(4)); }) ==
          "NotMonotone");
}

TEST_CASE("class spec grammar builds the advertised sequences") {
    CHECK(make_class("seq:pow:2").term(3).lo == Rat(1, 8));
    CHECK(make_class("seq:pow:3/2").term(2).lo == Rat(4, 9));
    CHECK(make_class("seq:poly:2").term(4).lo == Rat(1, 16));
    CHECK(make_class("seq:poly:-1").term(5).lo == Rat(5));
    CHECK(make_class("seq:factored:(i+1)/(i*i)").term(3).lo == Rat(4, 9));
    CHECK(make_class("seq:factored:i^3-i^2").term(2).lo == Rat(4));
    CHECK(make_class("seq:factored:(i+1)^2/(i*i)").term(4).hi == Rat(25, 16));
}

TEST_CASE("class spec grammar rejects junk and bad values") {
    CHECK(code_of([] { make_class("seq:pow:abc"); }) == "MalformedSpec");
    CHECK(code_of([] { make_class("seq:poly:1/2"); }) == "MalformedSpec");
    CHECK(code_of([] { make_class("seq:factored:((i)"); }) == "MalformedSpec");
    CHECK(code_of([] { make_class("seq:factored:i+"); }) == "MalformedSpec");
    CHECK(code_of([] { make_class("seq:unknown:1"); }) == "MalformedSpec");
    CHECK(code_of([] { make_class("seq:pow:0"); }) == "BadArgument");
    CHECK(code_of([] { make_class("seq:factored:i-5").term(5); }) == "NonPositiveTerm");
    CHECK(code_of([] { make_class("seq:factored:i-5").term(4); }) == "NonPositiveTerm");
    CHECK(code_of([] { make_class("seq:factored:1/(i-3)").term(3); }) == "DivisionByZero");
}

TEST_CASE("pair-backed classes track convergent errors and denominators") {
    GDClass err = make_class("seq:from-pair:surd:" + kRoot + "2");
    // |2*sqrt2 - 3| and |5*sqrt2 - 7|.
    CHECK(within(err.term(1), 1715728L, 1715729L, 10000000L));
    CHECK(within(err.term(2), 710678L, 710679L, 10000000L));

    GDClass rec = make_class("seq:recip-denoms:surd:" + kRoot + "2");
    CHECK(rec.term(1).lo == Rat(1, 2));
    CHECK(rec.term(3).lo == Rat(1, 12));
    CHECK(rec.term(3).hi == Rat(1, 12));

    // A terminating expansion runs out of ladder and then of error.
    GDClass fin = make_class("seq:from-pair:rational:355/113");
    CHECK(fin.term(1).lo == Rat(1, 113));
    CHECK(code_of([&] { fin.term(2); }) == "NonPositiveTerm");
    CHECK(code_of([&] { fin.term(5); }) == "RationalTerminated");

    // Convergent errors and reciprocal denominators share a growth exponent.
    CHECK(frobenius_compare(err, rec, 16, Rat(8)).value == VerdictValue::EQUIVALENT);

    // Stream-backed interval terms certify the same way.
    GDClass se = make_class("seq:from-pair:stream:e");
    GDClass sr = make_class("seq:recip-denoms:stream:e");
    CHECK(compare_class(se, sr, 12, Rat(65536)).value == VerdictValue::EQUIVALENT);
}
