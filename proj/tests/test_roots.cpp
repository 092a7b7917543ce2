#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "ideoarith/roots.hpp"

using namespace ideoarith;

namespace {
Rat approx(double v) { return Rat(v); }
}

TEST_CASE("rational complex arithmetic") {
    RatC a(Rat(1), Rat(2));
    RatC b(Rat(3), Rat(-1));
    RatC p = a * b;
    CHECK(p.re == 5);  // 3 + 2
    CHECK(p.im == 5);  // -1 + 6
    RatC q = p / b;
    CHECK(q.re == a.re);
    CHECK(q.im == a.im);
    CHECK(a.norm2() == 5);
    CHECK_THROWS_AS(a / RatC(), IdeoError);
}

TEST_CASE("roots of a quadratic") {
    auto disks = isolate_roots(IntPoly{-2, 0, 1}, 64);
    REQUIRE(disks.size() == 2);
    int total = 0;
    for (const auto& d : disks) {
        total += d.multiplicity;
        CHECK(d.radius <= pow2(-64));
        Interval m = modulus_interval(d, 80);
        // every root has |alpha| = sqrt(2)
        CHECK(m.lo < approx(1.4142136));
        CHECK(m.hi > approx(1.4142135));
    }
    CHECK(total == 2);
    // one positive real root near 1.41421, one negative
    std::vector<Rat> res;
    for (const auto& d : disks) res.push_back(d.center.re);
    std::sort(res.begin(), res.end());
    CHECK(res[0] < -1);
    CHECK(res[1] > 1);
}

TEST_CASE("multiplicities flow from the squarefree split") {
    IntPoly f = poly_pow(IntPoly{-2, 0, 1}, 3) * IntPoly{-5, 1};
    auto disks = isolate_roots(f, 48);
    REQUIRE(disks.size() == 3);
    int total = 0;
    int mult3 = 0;
    bool saw5 = false;
    for (const auto& d : disks) {
        total += d.multiplicity;
        if (d.multiplicity == 3) ++mult3;
        Interval m = modulus_interval(d, 60);
        if (m.contains(Rat(5))) saw5 = true;
    }
    CHECK(total == 7);
    CHECK(mult3 == 2);
    CHECK(saw5);
}

TEST_CASE("complex pair and zero roots") {
    auto disks = isolate_roots(IntPoly{1, 0, 1}, 48);  // X^2+1
    REQUIRE(disks.size() == 2);
    for (const auto& d : disks) {
        Interval m = modulus_interval(d, 60);
        CHECK(m.contains(Rat(1)));
        CHECK(abs_rat(d.center.re) < Rat(1, 1000));
    }
    auto z = isolate_roots(IntPoly{0, 0, 0, 1}, 32);  // X^3
    REQUIRE(z.size() == 1);
    CHECK(z[0].multiplicity == 3);
    CHECK(z[0].radius == 0);
    CHECK(z[0].center.norm2() == 0);
}

TEST_CASE("distance to a real point") {
    auto disks = isolate_roots(IntPoly{-3, 0, 1}, 80);  // roots +-sqrt(3)
    bool positive_seen = false;
    for (const auto& d : disks) {
        if (d.center.re > 0) {
            Interval dist = distance_interval(d, Interval(Rat(2)), 80);
            // |2 - sqrt(3)| = 0.26794919...
            CHECK(dist.lo > approx(0.2679491));
            CHECK(dist.hi < approx(0.2679493));
            positive_seen = true;
        }
    }
    CHECK(positive_seen);
}

TEST_CASE("mahler measure") {
    Interval m1 = mahler_measure(IntPoly{-2, 0, 1}, 40);  // = 2
    CHECK(m1.contains(Rat(2)));
    CHECK(m1.width() <= Rat(2) * pow2(-39));

    CHECK(mahler_measure(IntPoly{1, 0, 1}, 40).contains(Rat(1)));
    CHECK(mahler_measure(IntPoly{-3, 2}, 40).contains(Rat(3)));   // 2 * 3/2
    CHECK(mahler_measure(IntPoly{-1, 0, 0, 0, 4}, 30).contains(Rat(4)));  // roots inside the unit disk
    CHECK(mahler_measure(IntPoly{0, 0, 0, 1}, 40).contains(Rat(1)));

    // golden ratio: X^2 - X - 1 has measure phi = 1.6180339887...
    Interval g = mahler_measure(IntPoly{-1, -1, 1}, 50);
    CHECK(g.lo > approx(1.6180339886));
    CHECK(g.hi < approx(1.6180339889));
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(IntPoly{-2, 0, 1}));
    CHECK(is_irreducible(IntPoly{-1, -1, 1}));
    CHECK(is_irreducible(IntPoly{1, 1, 1}));
    CHECK(is_irreducible(IntPoly{-2, 0, 0, 1}));
    CHECK(is_irreducible(IntPoly{1, 0, 0, 0, 1}));      // X^4+1
    CHECK(is_irreducible(IntPoly{-1, -1, 0, 0, 0, 1}));  // X^5-X-1
    CHECK(is_irreducible(IntPoly{-4, 0, 2}));            // content 2 of X^2-2

    CHECK(!is_irreducible(IntPoly{-1, 0, 1}));
    CHECK(!is_irreducible(IntPoly{6, 0, -5, 0, 1}));     // (X^2-2)(X^2-3)
    CHECK(!is_irreducible(IntPoly{-2, -1, 2, 1}));       // (X-1)(X+1)(X+2)
    CHECK(!is_irreducible(IntPoly{0, 1, 1}));            // X(X+1)
    CHECK(!is_irreducible(IntPoly{1, 2, 1}));            // (X+1)^2
    CHECK(!is_irreducible(IntPoly{2, 0, 3, 0, 1}));      // (X^2+1)(X^2+2)
    CHECK(!is_irreducible(IntPoly{42}));

    IntPoly big = IntPoly::monomial(13, Int(1)) + IntPoly{1, 1};
    CHECK_THROWS_AS(is_irreducible(big), IdeoError);
}

TEST_CASE("isolation of a degree-16 product stays certified") {
    // (X^2-2)(X^2-3)(X^4+1)(X^2+5)(X^2-7)(X^4-10X^2+1)
    IntPoly f = IntPoly{-2, 0, 1} * IntPoly{-3, 0, 1} * IntPoly{1, 0, 0, 0, 1} *
                IntPoly{5, 0, 1} * IntPoly{-7, 0, 1} * IntPoly{1, 0, -10, 0, 1};
    auto disks = isolate_roots(f, 60);
    int total = 0;
    for (const auto& d : disks) total += d.multiplicity;
    CHECK(total == 16);
    // sqrt(2)+sqrt(3) = 3.14626436... is a root of X^4-10X^2+1
    bool found = false;
    for (const auto& d : disks) {
        Interval m = modulus_interval(d, 70);
        if (m.lo < approx(3.14626437) && m.hi > approx(3.14626436)) found = true;
    }
    CHECK(found);
}
