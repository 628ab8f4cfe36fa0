#include <doctest.h>

#include "novikov/random.hpp"
#include "support.hpp"

using namespace novikov;

namespace
{

LaurentPoly z(std::size_t rank, std::size_t axis)
{
    return LaurentPoly::variable(rank, axis);
}

LaurentPoly one(std::size_t rank)
{
    return LaurentPoly::constant(rank, 1);
}

} // namespace

TEST_CASE("addition merges like terms and cancels")
{
    CHECK(poly_add(z(1, 0) - one(1), one(1) - z(1, 0)).is_zero());
    CHECK(poly_add(z(1, 0), z(1, 0)) == z(1, 0).scaled(2));

    const auto z1z2inv = LaurentPoly::monomial(ExponentVector{1, -1});
    const auto sum = poly_add(z1z2inv + LaurentPoly::constant(2, 3), LaurentPoly::constant(2, -3));
    CHECK(sum == z1z2inv);
    CHECK(sum.term_count() == 1);
}

TEST_CASE("multiplication")
{
    CHECK(poly_mul(z(1, 0) - one(1), z(1, 0) + one(1)) == z(1, 0) * z(1, 0) - one(1));
    CHECK(poly_mul(LaurentPoly::monomial(ExponentVector{-1}), z(1, 0)) == one(1));
    CHECK(poly_mul(z(1, 0) - one(1), LaurentPoly::zero(1)).is_zero());
}

TEST_CASE("rank mismatch is rejected")
{
    CHECK_THROWS_AS(z(1, 0) + z(2, 0), RankMismatch);
    CHECK_THROWS_AS(z(2, 0).evaluate(SpecPoint::rational({Rational(2)})), RankMismatch);
}

TEST_CASE("evaluation at the three kinds of points")
{
    const auto p = z(1, 0) - one(1);
    CHECK(std::get<Rational>(poly_eval(p, SpecPoint::trivial(1))) == 0);
    CHECK(std::get<Rational>(poly_eval(p, SpecPoint::rational({Rational(2)}))) == 1);

    // z1 z2 at (3, 5) in F_7: 15 mod 7.
    const auto q = z(2, 0) * z(2, 1);
    CHECK(std::get<std::uint64_t>(poly_eval(q, SpecPoint::finite_field(7, {3, 5}))) == 15 % 7);

    // z at the point i of the unit circle.
    const auto c = std::get<std::complex<double>>(poly_eval(z(1, 0), SpecPoint::unit_complex({0.25})));
    CHECK(c.real() == doctest::Approx(0.0));
    CHECK(c.imag() == doctest::Approx(1.0));

    // Negative exponents use inverses.
    const auto inv = LaurentPoly::monomial(ExponentVector{-1});
    CHECK(std::get<std::uint64_t>(inv.evaluate(SpecPoint::finite_field(7, {3}))) == 5);
    CHECK(std::get<Rational>(inv.evaluate(SpecPoint::rational({Rational(2, 3)}))) == Rational(3, 2));
}

TEST_CASE("points reject non-units")
{
    CHECK_THROWS(SpecPoint::finite_field(7, {0}));
    CHECK_THROWS(SpecPoint::finite_field(8, {3}));
    CHECK_THROWS(SpecPoint::rational({Rational(0)}));
    CHECK(SpecPoint::finite_field(7, {9}).rank() == 1);
}

TEST_CASE("evaluation is a ring homomorphism at random finite-field points")
{
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int t = 0; t < 1000; ++t)
    {
        const std::size_t r = 1 + uniform_below(rng, 3);
        const auto a = testing::random_poly(rng, r, 4);
        const auto b = testing::random_poly(rng, r, 4);
        const std::uint64_t p = 1000003;
        std::vector<std::uint64_t> coords;
        for (std::size_t k = 0; k < r; ++k)
            coords.push_back(1 + uniform_below(rng, p - 1));
        const auto at = SpecPoint::finite_field(p, coords);
        const auto ea = std::get<std::uint64_t>(a.evaluate(at));
        const auto eb = std::get<std::uint64_t>(b.evaluate(at));
        CHECK(std::get<std::uint64_t>((a + b).evaluate(at)) == (ea + eb) % p);
        CHECK(std::get<std::uint64_t>((a * b).evaluate(at)) == modular::mul(ea, eb, p));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("monomials are units")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t)
    {
        const std::size_t r = 1 + uniform_below(rng, 3);
        ExponentVector e(r);
        for (std::size_t k = 0; k < r; ++k)
            e[k] = static_cast<std::int64_t>(uniform_below(rng, 11)) - 5;
        CHECK(LaurentPoly::monomial(e) * LaurentPoly::monomial(-e) == one(r));
    }
}

TEST_CASE("random points rarely hit the zero set of a nonzero polynomial")
{
    // Over (F_p^*)^r a nonzero polynomial of spread D has at most
    // D (p-1)^(r-1) zeros, so a uniform unit point is a zero with
    // probability at most D / (p-1).
    std::mt19937_64 rng(5);
    const std::uint64_t p = 101;
    const std::size_t trials = 10000;
    for (int round = 0; round < 5; ++round)
    {
        const std::size_t r = 1 + round % 3;
        LaurentPoly poly = testing::random_poly(rng, r, 3);
        while (poly.is_zero() || poly.is_monomial())
            poly = testing::random_poly(rng, r, 3);
        std::size_t zeros = 0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            std::vector<std::uint64_t> coords;
            for (std::size_t k = 0; k < r; ++k)
                coords.push_back(1 + uniform_below(rng, p - 1));
            zeros += std::get<std::uint64_t>(poly.evaluate(SpecPoint::finite_field(p, coords))) == 0 ? 1 : 0;
        }
        const double bound = static_cast<double>(poly.spread()) / static_cast<double>(p - 1);
        // Five standard deviations of binomial slack.
        const double slack = 5.0 * std::sqrt(bound * (1 - bound) / static_cast<double>(trials));
        CHECK(static_cast<double>(zeros) / trials <= bound + slack);
    }
}

TEST_CASE("exact division")
{
    const auto a = z(1, 0) * z(1, 0) - one(1);
    auto q = a.divide_exact(z(1, 0) - one(1));
    REQUIRE(q.has_value());
    CHECK(*q == z(1, 0) + one(1));
    CHECK_FALSE(a.divide_exact(z(1, 0) + one(1).scaled(2)).has_value());
    CHECK_THROWS_AS(a.divide_exact(LaurentPoly::zero(1)), std::domain_error);

    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t)
    {
        const std::size_t r = 1 + uniform_below(rng, 3);
        const auto x = testing::random_poly(rng, r, 4), y = testing::random_poly(rng, r, 4);
        if (y.is_zero())
            continue;
        auto back = (x * y).divide_exact(y);
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
}

TEST_CASE("content")
{
    const auto p = LaurentPoly(1, {{ExponentVector{0}, Rational(4, 3)}, {ExponentVector{2}, Rational(-2)}});
    CHECK(p.content() == Rational(2, 3));
}

TEST_CASE("text form round trip")
{
    const auto p = LaurentPoly(2, {{ExponentVector{1, -1}, Rational(1)}, {ExponentVector{0, 0}, Rational(-3, 2)}});
    CHECK(p.to_string() == "(1) [1,-1] + (-3/2) [0,0]");
    CHECK(io::parse_poly(p.to_string(), 2) == p);
    CHECK(io::parse_poly("0", 3).is_zero());
    CHECK(io::parse_poly("(2) [1] - (1) [0]", 1) == z(1, 0).scaled(2) - one(1));

    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t)
    {
        const std::size_t r = 1 + uniform_below(rng, 3);
        const auto x = testing::random_poly(rng, r, 5);
        CHECK(io::parse_poly(x.to_string(), r) == x);
    }
    CHECK_THROWS_AS(io::parse_poly("(1) [1,2]", 1), io::ParseError);
}

TEST_CASE("modular helpers")
{
    CHECK(modular::is_prime(2147483647));
    CHECK_FALSE(modular::is_prime(2147483649ULL));
    CHECK(modular::mul(modular::inverse(12345, 1000003), 12345, 1000003) == 1);
    CHECK(modular::pow(3, 100, 7) == 4);  // 3^6 = 1 mod 7, 3^4 = 81 = 4 mod 7
}
