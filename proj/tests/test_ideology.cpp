#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <string>
#include <vector>

#include "ideoarith/error.hpp"
#include "ideoarith/gdcalc.hpp"
#include "ideoarith/ideology.hpp"
#include "ideoarith/reals.hpp"

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

// Interval strictly inside (lo_scaled, hi_scaled) / scale.
bool within(const Interval& t, long lo_scaled, long hi_scaled, long scale) {
    return t.lo > Rat(lo_scaled, scale) && t.hi < Rat(hi_scaled, scale);
}

RealPtr sqrt2() { return make_source("surd:" + kRoot + "2"); }
RealPtr sqrt3() { return make_source("surd:" + kRoot + "3"); }
RealPtr golden() { return make_source("surd:(1+1" + kRoot + "5)/2"); }

// q_0..q_11 on the sqrt(2) convergent ladder
std::vector<Int> sqrt2Ladder() {
    return {1, 2, 5, 12, 29, 70, 169, 408, 985, 2378, 5741, 13860};
}

FiltrationWindow window(GDClass mu, GDClass nu) {
    return FiltrationWindow{std::move(mu), std::move(nu), {}, {}};
}

}  // namespace

TEST_CASE("attach picks nearest integers with certified errors") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5, 12, 29}, 128);
    CHECK(p.numers == std::vector<Int>{1, 3, 7, 17, 41});
    CHECK(p.tieIndices.empty());
    CHECK(p.skippedIndices.empty());
    // |eps| = |q sqrt2 - p|, alternating sign
    CHECK(within(p.errors[0], 41421, 41422, 100000));
    CHECK(within(p.errors[1], -17158, -17157, 100000));
    CHECK(within(p.errors[2], 71067, 71068, 1000000));
    CHECK(within(p.errors[3], -29438, -29437, 1000000));
    CHECK(within(p.errors[4], 121933, 121934, 10000000));
}

TEST_CASE("attach on the golden ratio reproduces the fibonacci error law") {
    ApproxPair p = attach(golden(), {2, 3, 5, 8, 13, 21}, 128);
    CHECK(p.numers == std::vector<Int>{3, 5, 8, 13, 21, 34});
    // |eps_j| = phi^-(j+3): each error is the previous scaled by -1/phi
    CHECK(within(p.errors[0], 236067, 236068, 1000000));
    CHECK(within(p.errors[1], -145899, -145898, 1000000));
    CHECK(within(p.errors[2], 90169, 90170, 1000000));
    CHECK(within(p.errors[3], -55729, -55728, 1000000));
    CHECK(within(p.errors[4], 34441, 34442, 1000000));
    CHECK(within(p.errors[5], -21287, -21286, 1000000));
}

TEST_CASE("attach on rational multiples gives exact zero errors") {
    ApproxPair p = attach(make_source("rational:7/3"), {3, 6, 9}, 128);
    CHECK(p.numers == std::vector<Int>{7, 14, 21});
    for (const Interval& e : p.errors) {
        CHECK(e.is_point());
        CHECK(e.lo == 0);
    }
}

TEST_CASE("half-integer ties round to even and are recorded") {
    ApproxPair p = attach(make_source("rational:1/2"), {1, 3, 5}, 128);
    CHECK(p.numers == std::vector<Int>{0, 2, 2});
    CHECK(p.tieIndices == std::vector<size_t>{0, 1, 2});
    CHECK(p.errors[0].lo == Rat(1, 2));
    CHECK(p.errors[1].lo == Rat(-1, 2));
    CHECK(p.errors[2].lo == Rat(1, 2));
}

TEST_CASE("attach resolves stream sources by interval refinement") {
    ApproxPair p = attach(make_source("stream:e"), {3, 7, 32, 465}, 128);
    CHECK(p.numers == std::vector<Int>{8, 19, 87, 1264});
    CHECK(within(p.errors[0], 154845, 154846, 1000000));
    CHECK(within(p.errors[1], 27972, 27973, 1000000));
    CHECK(within(p.errors[2], -14982, -14981, 1000000));
    CHECK(within(p.errors[3], 105023, 105024, 100000000));
}

TEST_CASE("attach rejects unusable arguments") {
    CHECK(code_of([] { attach(sqrt2(), {1, 0, 2}, 128); }) == "BadArgument");
    CHECK(code_of([] { attach(sqrt2(), {1, 2}, 8); }) == "BadArgument");
    CHECK(code_of([] { attach(nullptr, {1, 2}, 128); }) == "BadArgument");
}

TEST_CASE("pair errors can be recomputed at finer precision") {
    ApproxPair p = attach(make_source("stream:e"), {7, 32}, 64);
    Interval fine = pair_error_at(p, 1, 512);
    CHECK(fine.width() < p.errors[1].width());
    CHECK(intersects(fine, p.errors[1]));
    CHECK(code_of([&] { pair_error_at(p, 5, 128); }) == "IndexOutOfRange");
}

TEST_CASE("window membership separates growth and decay verdicts") {
    ApproxPair p = attach(sqrt2(), sqrt2Ladder(), 128);

    // scaled growth q_i 3^-i certifiably escapes to zero, errors below 2^-i
    Verdict ok = membership(p, window(gd_pow(Rat(3)), gd_pow(Rat(2))), 12);
    CHECK(ok.value == VerdictValue::EQUIVALENT);

    // q_i grows like 2.414^i, so the 2^-i window loses on the growth side
    Verdict g = membership(p, window(gd_pow(Rat(2)), gd_pow(Rat(2))), 12);
    CHECK(g.value == VerdictValue::GREATER);
    CHECK(g.witness.find("growth") != std::string::npos);

    // errors shrink like 2.414^-2i, far above 16^-i
    Verdict d = membership(p, window(gd_pow(Rat(3)), gd_pow(Rat(16))), 12);
    CHECK(d.value == VerdictValue::GREATER);
    CHECK(d.witness.find("decay class at i=7") != std::string::npos);

    // 2.414/2.5 is too close to 1 for a certified escape either way
    Verdict u = membership(p, window(gd_pow(Rat(5, 2)), gd_pow(Rat(2))), 12);
    CHECK(u.value == VerdictValue::UNDECIDED);
}

TEST_CASE("fine windows tighten the growth requirement") {
    ApproxPair p = attach(sqrt2(), sqrt2Ladder(), 128);
    FiltrationWindow loose{gd_pow(Rat(3)), gd_pow(Rat(2)), gd_poly(1), {}};
    CHECK(membership(p, loose, 12).value == VerdictValue::EQUIVALENT);
    FiltrationWindow tight{gd_pow(Rat(3)), gd_pow(Rat(2)), gd_poly(3), {}};
    Verdict v = membership(p, tight, 12);
    CHECK(v.value == VerdictValue::GREATER);
    CHECK(v.witness.find("fine") != std::string::npos);
}

TEST_CASE("the empty pair is a member of every window") {
    ApproxPair p = attach(sqrt2(), {}, 128);
    Verdict v = membership(p, window(gd_pow(Rat(3)), gd_pow(Rat(2))), 12);
    CHECK(v.value == VerdictValue::EQUIVALENT);
    CHECK(v.witness.find("empty") != std::string::npos);
}

TEST_CASE("windows demand infinitesimal classes") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5}, 128);
    FiltrationWindow bad{make_class("seq:factored:1"), gd_pow(Rat(2)), {}, {}};
    CHECK(code_of([&] { membership(p, bad, 3); }) == "BadArgument");
}

TEST_CASE("dual exchanges denominators and numerators against the reciprocal") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5, 12, 29}, 128);
    ApproxPair d = dual(p);
    CHECK(d.x->describe() == "surd:(0+1" + kRoot + "2)/2");
    CHECK(d.denoms == std::vector<Int>{1, 3, 7, 17, 41});
    CHECK(d.numers == std::vector<Int>{1, 2, 5, 12, 29});
    CHECK(d.skippedIndices.empty());
    // |eps'| = |eps| / sqrt2 at each kept index
    CHECK(within(d.errors[2], -50253, -50252, 1000000));

    ApproxPair dd = dual(d);
    CHECK(dd.denoms == p.denoms);
    CHECK(dd.numers == p.numers);
}

TEST_CASE("dual skips zero numerators and records them") {
    ApproxPair p = attach(make_source("surd:(-1+1" + kRoot + "2)/1"), {1, 2}, 128);
    CHECK(p.numers == std::vector<Int>{0, 1});
    ApproxPair d = dual(p);
    CHECK(d.skippedIndices == std::vector<size_t>{0});
    CHECK(d.denoms == std::vector<Int>{1});
    CHECK(d.numers == std::vector<Int>{2});
    CHECK(d.x->describe() == "surd:(1+1" + kRoot + "2)/1");
    CHECK(within(d.errors[0], 41421, 41422, 100000));
}

TEST_CASE("dual refuses a zero value") {
    ApproxPair z = attach(make_source("rational:0/1"), {1, 2}, 128);
    CHECK(code_of([&] { dual(z); }) == "ZeroTheta");
}

TEST_CASE("integer shifts act on numerators and leave errors alone") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5, 12, 29}, 128);
    ApproxPair s = pgl2_act({1, 1, 0, 1}, p);
    CHECK(s.x->describe() == "surd:(1+1" + kRoot + "2)/1");
    CHECK(s.denoms == p.denoms);
    CHECK(s.numers == std::vector<Int>{2, 5, 12, 29, 70});
    for (size_t j = 0; j < 5; ++j) CHECK(intersects(s.errors[j], p.errors[j]));
}

TEST_CASE("the standard inversion coincides with dual") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5, 12, 29}, 128);
    ApproxPair inv = pgl2_act({0, 1, 1, 0}, p);
    ApproxPair d = dual(p);
    CHECK(inv.denoms == d.denoms);
    CHECK(inv.numers == d.numers);
    CHECK(inv.x->describe() == d.x->describe());

    ApproxPair id = pgl2_act({1, 0, 0, 1}, p);
    CHECK(id.denoms == p.denoms);
    CHECK(id.numers == p.numers);
}

TEST_CASE("fractional-linear actions skip poles index by index") {
    ApproxPair p = attach(sqrt2(), {1, 2}, 128);
    ApproxPair q = pgl2_act({1, 0, 1, -1}, p);
    CHECK(q.skippedIndices == std::vector<size_t>{0});
    CHECK(q.denoms == std::vector<Int>{1});
    CHECK(q.numers == std::vector<Int>{3});
    CHECK(q.x->describe() == "surd:(2+1" + kRoot + "2)/1");
    CHECK(within(q.errors[0], 41421, 41422, 100000));
}

TEST_CASE("fractional-linear actions reject bad matrices and poles") {
    ApproxPair p = attach(sqrt2(), {1, 2, 5}, 128);
    CHECK(code_of([&] { pgl2_act({2, 0, 0, 1}, p); }) == "NotUnimodular");
    ApproxPair r = attach(make_source("rational:1/2"), {2, 4}, 128);
    CHECK(code_of([&] { pgl2_act({1, 0, 2, -1}, r); }) == "PoleHit");
}

TEST_CASE("membership verdicts survive unimodular actions") {
    ApproxPair p = attach(sqrt2(), sqrt2Ladder(), 128);
    FiltrationWindow w = window(gd_pow(Rat(3)), gd_pow(Rat(2)));
    CHECK(membership(p, w, 12).value == VerdictValue::EQUIVALENT);
    ApproxPair moved = pgl2_act({2, 1, 1, 1}, p);
    CHECK(moved.x->describe() == "surd:(3-1" + kRoot + "2)/1");
    CHECK(moved.denoms[0] == 2);
    CHECK(moved.denoms[1] == 5);
    CHECK(moved.numers[0] == 3);
    CHECK(membership(moved, w, 12).value == VerdictValue::EQUIVALENT);
}

TEST_CASE("composition builds product, sum and difference pairs") {
    ApproxPair pA = attach(sqrt2(), {2, 5}, 128);
    ApproxPair pB = attach(sqrt3(), {2, 4}, 128);
    FiltrationWindow wA = window(gd_pow(Rat(3)), gd_pow(Rat(2)));
    FiltrationWindow wB = swap_window(wA);
    CHECK(windows_swapped(wA, wB));
    CHECK_FALSE(windows_swapped(wA, wA));

    ComposeResult r = ideo_compose(pA, pB, wA, wB, 2);
    CHECK(r.product.x->describe() == "surd:(0+1" + kRoot + "6)/1");
    CHECK(r.product.denoms == std::vector<Int>{4, 20});
    CHECK(r.product.numers == std::vector<Int>{9, 49});
    CHECK(within(r.product.errors[1], -102052, -102051, 10000000));

    CHECK(r.sum.x->describe() ==
          "sum(surd:(0+1" + kRoot + "2)/1,surd:(0+1" + kRoot + "3)/1)");
    CHECK(r.sum.denoms == std::vector<Int>{4, 20});
    CHECK(r.sum.numers == std::vector<Int>{12, 63});
    CHECK(within(r.sum.errors[1], -747127, -747125, 10000000));

    CHECK(r.difference.x->describe() ==
          "difference(surd:(0+1" + kRoot + "2)/1,surd:(0+1" + kRoot + "3)/1)");
    CHECK(r.difference.numers == std::vector<Int>{0, -7});
    CHECK(within(r.difference.errors[1], 643255, 643256, 1000000));

    // two indices are too few to certify membership, so the verdict is open
    CHECK(r.verdict.value == VerdictValue::UNDECIDED);
    CHECK(r.verdict.witness.find("membership undecided") != std::string::npos);
}

TEST_CASE("composition of rational pairs is exact") {
    ApproxPair pA = attach(make_source("rational:7/3"), {3, 6}, 128);
    ApproxPair pB = attach(make_source("rational:5/2"), {2, 4}, 128);
    FiltrationWindow wA = window(gd_pow(Rat(3)), gd_pow(Rat(2)));
    ComposeResult r = ideo_compose(pA, pB, wA, swap_window(wA), 2);
    CHECK(r.product.denoms == std::vector<Int>{6, 24});
    CHECK(r.product.numers == std::vector<Int>{35, 140});
    CHECK(r.sum.numers == std::vector<Int>{29, 116});
    CHECK(r.difference.numers == std::vector<Int>{-1, -4});
    for (const Interval& e : r.product.errors) {
        CHECK(e.is_point());
        CHECK(e.lo == 0);
    }
    CHECK(r.sum.errors[1].lo == 0);
    CHECK(r.difference.errors[0].lo == 0);
}

TEST_CASE("composition demands swapped windows and decided memberships") {
    ApproxPair pA = attach(sqrt2(), {2, 5}, 128);
    ApproxPair pB = attach(sqrt3(), {2, 4}, 128);
    FiltrationWindow wA = window(gd_pow(Rat(3)), gd_pow(Rat(2)));
    CHECK(code_of([&] { ideo_compose(pA, pB, wA, wA, 2); }) == "WindowMismatch");

    ApproxPair p12 = attach(sqrt2(), sqrt2Ladder(), 128);
    FiltrationWindow w2 = window(gd_pow(Rat(2)), gd_pow(Rat(2)));
    std::string what;
    try {
        ideo_compose(p12, p12, w2, swap_window(w2), 12);
    } catch (const IdeoError& e) {
        what = e.what();
        CHECK(e.code() == "MembershipFailed");
    }
    CHECK(what.find("left pair") != std::string::npos);
}

TEST_CASE("self-composition along successor-reciprocal windows certifies") {
    auto lr = make_source("liouville-resolute");
    auto conv = convergents(lr, 8);
    std::vector<Int> dn;
    for (size_t i = 1; i <= 6; ++i) dn.push_back(conv[i].q);
    std::vector<Rat> succ;
    for (size_t i = 0; i < 7; ++i) succ.push_back(Rat(Int(1), conv[i + 1].q));
    GDClass sc = gd_from_function([succ](size_t i) { return succ[i]; },
                                  GDTag::Infinitesimal, "recip-successor");
    FiltrationWindow w{sc, sc, {}, {}};

    ApproxPair p = attach(lr, dn, 256);
    CHECK(p.numers[4] == 415821757);
    CHECK(membership(p, w, 6).value == VerdictValue::EQUIVALENT);

    ComposeResult r = ideo_compose(p, p, w, swap_window(w), 6);
    CHECK(r.verdict.value == VerdictValue::EQUIVALENT);
    for (size_t j = 0; j < 6; ++j) CHECK(r.product.denoms[j] == dn[j] * dn[j]);
}

TEST_CASE("escape events are successor quotients clearing twice the running max") {
    // sqrt2 and the golden ratio have constant tails: no events at all
    CHECK(escape_selection(sqrt2()->quotients(12), 10).empty());
    CHECK(escape_selection(golden()->quotients(12), 10).empty());
    CHECK(escape_selection(make_source("stream:e")->quotients(14), 12) ==
          std::vector<size_t>{1, 4});
    CHECK(escape_selection(make_source("liouville-resolute")->quotients(10), 8) ==
          std::vector<size_t>{2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("best classes along a selection pin denominators and errors") {
    BestInterval b = best_interval(make_source("stream:factorial"), "all", 6);
    CHECK(b.selection == std::vector<size_t>{1, 2, 3, 4, 5, 6});
    CHECK(b.infinitePQ.value == VerdictValue::EQUIVALENT);
    Interval mu3 = b.muBreve.term(3);
    CHECK(mu3.is_point());
    CHECK(mu3.lo == Rat(1, 19));
    CHECK(within(b.nuBreve.term(3), 21778, 21779, 10000000));

    BestInterval e4 = best_interval(make_source("stream:e"), "list:1,4,7,10", 10);
    CHECK(e4.infinitePQ.value == VerdictValue::EQUIVALENT);
    CHECK(e4.muBreve.term(2).lo == Rat(1, 7));
    CHECK(within(e4.nuBreve.term(4), 11028, 11029, 100000000));

    CHECK(best_interval(make_source("stream:e"), "stride:2,3", 10).selection ==
          std::vector<size_t>{2, 5, 8});
}

TEST_CASE("bounded quotients certifiably fail the escape verdict") {
    BestInterval b = best_interval(golden(), "all", 8);
    CHECK(b.infinitePQ.value == VerdictValue::GREATER);
    CHECK(b.infinitePQ.witness.find("fail to escape") != std::string::npos);

    BestInterval l = best_interval(make_source("liouville-resolute"), "escape", 8);
    CHECK(l.selection == std::vector<size_t>{2, 3, 4, 5, 6, 7, 8});
    CHECK(l.infinitePQ.value == VerdictValue::EQUIVALENT);
}

TEST_CASE("selection grammar rejects malformed and unusable requests") {
    auto e = make_source("stream:e");
    CHECK(code_of([&] { best_interval(golden(), "escape", 8); }) == "EmptySelection");
    CHECK(code_of([&] { best_interval(e, "list:0", 8); }) == "BadArgument");
    CHECK(code_of([&] { best_interval(e, "list:3,3", 8); }) == "BadArgument");
    CHECK(code_of([&] { best_interval(e, "frobnicate", 8); }) == "MalformedSpec");
    CHECK(code_of([&] { best_interval(make_source("rational:22/7"), "all", 8); }) ==
          "RationalInput");
    CHECK(code_of([&] { best_interval(e, "all", 8).muBreve.term(0); }) == "BadArgument");
    CHECK(code_of([&] { best_interval(e, "all", 8).muBreve.term(99); }) ==
          "IndexOutOfRange");
}

TEST_CASE("interleaving verdicts cover the whole trichotomy") {
    FlatResult bounded = flat_composable(golden(), sqrt2(), 16);
    CHECK(bounded.value == FlatValue::INCOMPOSABLE);
    CHECK(bounded.witness.find("quotient-bounded") != std::string::npos);

    auto lr = make_source("liouville-resolute");
    FlatResult self = flat_composable(lr, lr, 8);
    CHECK(self.value == FlatValue::COMPOSABLE);

    FlatResult one = flat_composable(golden(), lr, 8);
    CHECK(one.value == FlatValue::UNDECIDED);
    CHECK(one.witness.find("only one stream") != std::string::npos);

    CHECK(code_of([&] { flat_composable(make_source("rational:1/3"), sqrt2(), 8); }) ==
          "RationalInput");
}

TEST_CASE("the block pair is incomposable at every tested depth") {
    IncomposablePair bp = build_incomposable_pair({0});
    CHECK(bp.first->describe() == "blockpair:0");
    CHECK(bp.second->describe() == "blockpair:0#B");
    CHECK(!bp.certs.empty());
    for (const FlatResult& f : {flat_composable(bp.first, bp.second, 64),
                                flat_composable(bp.first, bp.second, 160)}) {
        CHECK(f.value == FlatValue::INCOMPOSABLE);
        CHECK(f.witness.find("both interleaving orders certifiably fail") !=
              std::string::npos);
    }
}

TEST_CASE("stream classification reports quotient structure") {
    StreamReport phi = classify_stream(golden(), 16);
    CHECK(phi.maxQuotient == 1);
    CHECK_FALSE(phi.escaping);
    CHECK_FALSE(phi.resolute);
    CHECK_FALSE(phi.abyssal);
    CHECK_FALSE(phi.liouvilleEvidence);
    CHECK(phi.kappa.lo > Rat(105, 100));
    CHECK(phi.kappa.hi < Rat(13, 10));

    StreamReport e = classify_stream(make_source("stream:e"), 16);
    CHECK(e.maxQuotient == 10);
    CHECK_FALSE(e.abyssal);

    StreamReport lr = classify_stream(make_source("liouville-resolute"), 8);
    CHECK(lr.escaping);
    CHECK(lr.resolute);
    CHECK_FALSE(lr.abyssal);
    CHECK(lr.liouvilleEvidence);
    CHECK(lr.kappa.lo > Rat(79, 10));
    CHECK(lr.kappa.hi < Rat(81, 10));

    StreamReport li = classify_stream(make_source("liouville-irresolute"), 10);
    CHECK_FALSE(li.resolute);
    CHECK(li.liouvilleEvidence);
    CHECK(li.kappa.lo > Rat(109, 10));
    CHECK(li.kappa.hi < Rat(111, 10));

    StreamReport bpA = classify_stream(build_incomposable_pair({0}).first, 56);
    CHECK(bpA.escaping);
    CHECK_FALSE(bpA.resolute);
    CHECK(bpA.abyssal);
    CHECK_FALSE(bpA.liouvilleEvidence);
}

TEST_CASE("slow windows accept pigeonhole denominators") {
    // growth class far below the decay class: mu = 8^-i against nu = 2^-i
    CHECK(compare_class(gd_pow(Rat(8)), gd_pow(Rat(2)), 16, Rat(4)).value ==
          VerdictValue::LESS);
    auto s2 = sqrt2();
    std::vector<Int> dn;
    for (int i = 1; i <= 12; ++i) dn.push_back(dirichlet_find(s2, Int(1) << i).second);
    CHECK(dn == std::vector<Int>{1, 2, 5, 12, 12, 29, 70, 169, 408, 408, 985, 2378});
    ApproxPair p = attach(s2, dn, 128);
    Verdict v = membership(p, window(gd_pow(Rat(8)), gd_pow(Rat(2))), 12);
    CHECK(v.value == VerdictValue::EQUIVALENT);
}

TEST_CASE("scaled golden errors never drop below the badly-approximable floor") {
    std::vector<Int> fib = {2, 3};
    while (fib.size() < 24) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    ApproxPair p = attach(golden(), fib, 192);
    for (size_t j = 0; j < p.denoms.size(); ++j) {
        Interval prod = abs_i(p.errors[j]) * Interval(Rat(p.denoms[j]));
        CHECK(prod.lo > Rat(2, 5));
        CHECK(prod.hi < 1);
    }
    Interval last = abs_i(p.errors.back()) * Interval(Rat(p.denoms.back()));
    CHECK(within(last, 44719, 44725, 100000));
}
