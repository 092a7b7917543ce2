#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ideoarith/intpoly.hpp"

using namespace ideoarith;

TEST_CASE("polynomial arithmetic") {
    IntPoly f{-2, 0, 1};  // X^2 - 2
    IntPoly g{-3, 0, 1};  // X^2 - 3
    IntPoly p = f * g;
    CHECK(p == IntPoly{6, 0, -5, 0, 1});  // X^4 - 5X^2 + 6
    CHECK((f + g) == IntPoly{-5, 0, 2});
    CHECK((f - g) == IntPoly{1});
    CHECK(p.degree() == 4);
    CHECK(p.lead() == 1);
    CHECK(p.coeff(2) == -5);
    CHECK(p.coeff(9) == 0);
    CHECK(poly_pow(f, 3) == f * f * f);
    CHECK((IntPoly{} * f).is_zero());
    CHECK(IntPoly::monomial(3, Int(2)) == IntPoly{0, 0, 0, 2});
}

TEST_CASE("derivative and evaluation") {
    IntPoly p{6, 0, -5, 0, 1};
    CHECK(derivative(p) == IntPoly{0, -10, 0, 4});
    CHECK(eval_int(p, Int(2)) == 2);       // 16 - 20 + 6
    CHECK(eval_rat(p, Rat(1, 2)) == Rat(77, 16));
    Interval e = eval_interval(IntPoly{-2, 0, 1}, Interval(Rat(1), Rat(2)));
    CHECK(e.contains(Rat(-1)));
    CHECK(e.contains(Rat(2)));
    CHECK(e.contains(Rat(0)));
}

TEST_CASE("content and primitive part") {
    IntPoly p{9, 0, 6};
    CHECK(content(p) == 3);
    CHECK(primitive_part(p) == IntPoly{3, 0, 2});
    IntPoly q{-9, 0, -6};
    CHECK(content(q) == 3);
    CHECK(primitive_part(q) == IntPoly{-3, 0, -2});  // keeps lead sign
    CHECK(content(IntPoly{}) == 0);
}

TEST_CASE("exact division") {
    IntPoly p{6, 0, -5, 0, 1};
    auto q = try_divide_exact(p, IntPoly{-2, 0, 1});
    REQUIRE(q.has_value());
    CHECK(*q == IntPoly{-3, 0, 1});
    CHECK(!try_divide_exact(p, IntPoly{-1, 1}).has_value());  // X-1 is not a factor
    CHECK(!try_divide_exact(IntPoly{1, 1}, IntPoly{0, 2}).has_value());  // 2X divides nothing odd
}

TEST_CASE("polynomial gcd") {
    IntPoly a{-1, 0, 1};      // X^2 - 1
    IntPoly b{-1, 0, 0, 1};   // X^3 - 1
    CHECK(gcd_poly(a, b) == IntPoly{-1, 1});

    IntPoly f = IntPoly{-2, 1} * IntPoly{-2, 1} * IntPoly{1, 1};
    IntPoly g = IntPoly{-2, 1} * IntPoly{3, 1};
    CHECK(gcd_poly(f, g) == IntPoly{-2, 1});

    CHECK(gcd_poly(IntPoly{4, 8}, IntPoly{}) == IntPoly{1, 2});
    CHECK(gcd_poly(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}).degree() == 0);
}

TEST_CASE("squarefree decomposition") {
    IntPoly f = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 1};
    auto parts = squarefree_decompose(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == IntPoly{2, 1});
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == IntPoly{-1, 1});
    CHECK(parts[1].second == 2);

    IntPoly g = poly_pow(IntPoly{-2, 0, 1}, 3) * IntPoly{-5, 1};
    auto gp = squarefree_decompose(g);
    REQUIRE(gp.size() == 2);
    CHECK(gp[0].first == IntPoly{-5, 1});
    CHECK(gp[0].second == 1);
    CHECK(gp[1].first == IntPoly{-2, 0, 1});
    CHECK(gp[1].second == 3);

    auto sf = squarefree_decompose(IntPoly{6, 0, -5, 0, 1});
    REQUIRE(sf.size() == 1);
    CHECK(sf[0].second == 1);
    CHECK(sf[0].first == IntPoly{6, 0, -5, 0, 1});
}

TEST_CASE("resultants") {
    // res(X^2-2, X^2-3) = (2-3)(2-3) = 1
    CHECK(resultant_int(IntPoly{-2, 0, 1}, IntPoly{-3, 0, 1}) == 1);
    // res(aY+b, cY+d) = ad - bc
    CHECK(resultant_int(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);
    CHECK(resultant_int(IntPoly{-1, 2}, IntPoly{-2, 3}) == -1);
    // common root
    CHECK(resultant_int(IntPoly{1, 0, 1}, IntPoly{1, 0, 1}) == 0);
    CHECK(resultant_int(IntPoly{-1, 0, 1}, IntPoly{-1, 1}) == 0);
    // res(f,g) = (-1)^{mn} res(g,f): even case deg 3 x deg 2, odd case 1 x 1
    IntPoly f{1, 2, 0, 1};
    IntPoly g{-4, 0, 1};
    CHECK(resultant_int(f, g) == resultant_int(g, f));
    CHECK(resultant_int(f, g) == -143);  // f(2)*f(-2) = 13*(-11)
    CHECK(resultant_int(IntPoly{-2, 1}, IntPoly{-3, 1}) ==
          -resultant_int(IntPoly{-3, 1}, IntPoly{-2, 1}));
    // multiplicative in the second slot
    IntPoly h{7, 1};
    CHECK(resultant_int(f, g * h) == resultant_int(f, g) * resultant_int(f, h));
    // constants
    CHECK(resultant_int(IntPoly{5}, IntPoly{-4, 0, 1}) == 25);
    CHECK(resultant_int(IntPoly{5}, IntPoly{7}) == 1);
    CHECK_THROWS_AS(resultant_int(IntPoly{}, f), IdeoError);
}

TEST_CASE("bareiss determinant") {
    std::vector<std::vector<Int>> m{{Int(0), Int(2)}, {Int(3), Int(4)}};
    CHECK(bareiss_det(m) == -6);
    std::vector<std::vector<Int>> id3{{Int(1), Int(0), Int(0)},
                                      {Int(0), Int(1), Int(0)},
                                      {Int(0), Int(0), Int(1)}};
    CHECK(bareiss_det(id3) == 1);
    std::vector<std::vector<Int>> sing{{Int(1), Int(2)}, {Int(2), Int(4)}};
    CHECK(bareiss_det(sing) == 0);
    std::vector<std::vector<Int>> m3{{Int(2), Int(-1), Int(3)},
                                     {Int(1), Int(0), Int(-2)},
                                     {Int(4), Int(5), Int(1)}};
    // det = 2(0+10) +1(1+8) +3(5-0) = 20+9+15 = 44
    CHECK(bareiss_det(m3) == 44);
}

TEST_CASE("root bound and Sturm counting") {
    IntPoly f{-2, 0, 1};
    CHECK(cauchy_root_bound(f) == 3);
    CHECK(count_real_roots(f, Rat(1), Rat(2)) == 1);
    CHECK(count_real_roots(f, Rat(-2), Rat(0)) == 1);
    CHECK(count_real_roots(f, Rat(2), Rat(3)) == 0);
    CHECK(count_real_roots(f) == 2);
    CHECK(count_real_roots(IntPoly{1, 0, 1}) == 0);
    CHECK(count_real_roots(IntPoly{-1, 0, 0, 1}) == 1);
    CHECK(count_real_roots(IntPoly{6, 0, -5, 0, 1}) == 4);
    // repeated roots are counted once
    CHECK(count_real_roots(IntPoly{-1, 1} * IntPoly{-1, 1}) == 1);
    CHECK_THROWS_AS(count_real_roots(f, Rat(0), Rat(0)), IdeoError);
}

TEST_CASE("integer interpolation") {
    // y = X^2 - 5X + 6 through x = 0, 1, 2
    std::vector<std::pair<Int, Int>> pts{{Int(0), Int(6)}, {Int(1), Int(2)}, {Int(2), Int(0)}};
    CHECK(interpolate_int(pts) == IntPoly{6, -5, 1});
    // a line
    std::vector<std::pair<Int, Int>> line{{Int(-1), Int(-5)}, {Int(3), Int(7)}};
    CHECK(interpolate_int(line) == IntPoly{-2, 3});
    // constant
    std::vector<std::pair<Int, Int>> one{{Int(5), Int(42)}};
    CHECK(interpolate_int(one) == IntPoly{42});
    // non-integral interpolant is rejected
    std::vector<std::pair<Int, Int>> bad{{Int(0), Int(0)}, {Int(2), Int(1)}};
    CHECK_THROWS_AS(interpolate_int(bad), IdeoError);
    // degree-7 round trip
    IntPoly p{3, -1, 0, 4, 0, 0, -2, 1};
    std::vector<std::pair<Int, Int>> pts7;
    for (int x = -4; x <= 3; ++x) pts7.emplace_back(Int(x), eval_int(p, Int(x)));
    CHECK(interpolate_int(pts7) == p);
}
