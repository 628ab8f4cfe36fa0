#include <doctest.h>

#include <sstream>

#include "support.hpp"

using namespace novikov;
using testing::load;

namespace
{

io::ParseError parse_error_of(const std::string &text)
{
    try
    {
        io::parse_complex(text);
    }
    catch (const io::ParseError &e)
    {
        return e;
    }
    FAIL("no parse error for:\n" << text);
    return io::ParseError(0, 0, "");
}

} // namespace

TEST_CASE("complex files parse")
{
    const auto torus = load("torus.dcx");
    CHECK(torus.complex.cell_counts() == std::vector<std::size_t>{1, 3, 2});
    REQUIRE(torus.cocycle.has_value());
    CHECK(torus.cocycle->rank() == 2);
    CHECK(torus.cocycle->exponent(2) == ExponentVector{1, 1});

    const auto f = io::parse_complex(std::string("# comment\n[cells 0]\n2  # two vertices\n\n[cells 1]\n1, 0\n"
                                                 "[cocycle 1]\n-3/2\n"));
    CHECK(f.complex.cell_counts() == std::vector<std::size_t>{2, 1});
    CHECK(f.cocycle->value(0)[0] == Rational(-3, 2));

    const auto only = io::parse_complex(std::string("[cocycle 1]\n1\n-1\n"));
    CHECK(only.complex.cell_counts().empty());
    CHECK(only.cocycle->edge_count() == 2);

    const auto point = load("point.dcx");
    CHECK(point.complex.dimension() == 0);
    CHECK_FALSE(point.cocycle.has_value());
}

TEST_CASE("parse errors carry line and column")
{
    auto e = parse_error_of("[cells 0]\n1\n[cells 1]\n0 x\n");
    CHECK(e.line() == 4);
    CHECK(e.column() == 3);

    e = parse_error_of("[cells 0]\n1\n[cells 2]\n0 0 0\n");
    CHECK(e.line() == 3);

    e = parse_error_of("[cells 0]\n1\n[cells 1]\n0 0\n[cocycle 1]\n1/0\n");
    CHECK(e.line() == 6);

    e = parse_error_of("[cells 0\n");
    CHECK(e.line() == 1);

    e = parse_error_of("0 0\n");
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("line 1, column 1") != std::string::npos);

    CHECK_THROWS_AS(io::parse_complex(std::string("")), io::ParseError);
    CHECK_THROWS_AS(io::read_complex_file("/nonexistent.dcx"), std::runtime_error);
}

TEST_CASE("out-of-range faces are validation errors")
{
    const auto f = io::parse_complex(std::string("[cells 0]\n1\n[cells 1]\n0 3\n"));
    CHECK_THROWS_AS(validate_complex(f.complex), ValidationError);
    CHECK_THROWS_AS(io::parse_complex(std::string("[cells 0]\n1\n[cells 1]\n0 0 0\n")), io::ParseError);
}

TEST_CASE("complex files round trip")
{
    for (const auto *name : {"circle.dcx", "figure_eight.dcx", "torus.dcx", "genus2.dcx", "point.dcx", "sphere2.dcx"})
    {
        const auto f = load(name);
        const auto text = io::format_complex(f.complex, f.cocycle);
        const auto back = io::parse_complex(text);
        CHECK(back.complex == f.complex);
        CHECK(back.cocycle == f.cocycle);
        CHECK(io::format_complex(back.complex, back.cocycle) == text);
    }

    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t)
    {
        const auto rc = testing::random_complex(rng);
        const auto w = testing::random_cocycle(rc, 1 + uniform_below(rng, 3), rng);
        const auto back = io::parse_complex(io::format_complex(rc.complex, w));
        CHECK(back.complex == rc.complex);
        CHECK(back.cocycle == w);
    }
}

TEST_CASE("matrix files")
{
    const std::string text = "[matrix 2 3 2]\n0 0 : (1) [1,0] - (1) [0,0]\n1 2 : (2/3) [0,-1]\n";
    std::istringstream in(text);
    const auto m = io::parse_matrix(in);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.nonzero_count() == 2);
    CHECK(m.at(1, 2) == LaurentPoly::monomial(ExponentVector{0, -1}, Rational(2, 3)));
    std::istringstream again(io::format_matrix(m));
    CHECK(io::parse_matrix(again) == m);

    std::istringstream bad("[matrix 1 1 1]\n3 0 : (1) [0]\n");
    CHECK_THROWS_AS(io::parse_matrix(bad), io::ParseError);
}

TEST_CASE("points")
{
    const auto pts = io::parse_points("1;-1;i;u:0.125", 1);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].is_rational());
    CHECK(pts[1].is_rational());
    CHECK(pts[2].is_unit_complex());
    CHECK(pts[3].is_unit_complex());
    CHECK(std::get<UnitComplexPoint>(pts[2].storage()).turns[0] == doctest::Approx(0.25));

    const auto ff = io::parse_points("p=101:5,7", 2);
    CHECK(ff[0].is_finite_field());
    CHECK(std::get<FiniteFieldPoint>(ff[0].storage()).coords == std::vector<std::uint64_t>{5, 7});

    CHECK(io::parse_points("2/3,5", 2)[0].is_rational());
    CHECK_THROWS_AS(io::parse_points("1,1", 1), RankMismatch);
    CHECK_THROWS(io::parse_points("p=100:3", 1));
    CHECK_THROWS(io::parse_points("0", 1));
    CHECK_THROWS(io::parse_points("", 1));
}

TEST_CASE("inline cocycles")
{
    const auto w = io::parse_inline_cocycle("1,0;0,1;1,1");
    CHECK(w.rank() == 2);
    CHECK(w.edge_count() == 3);
    CHECK(w.value(2)[1] == 1);
    CHECK(io::parse_inline_cocycle("1;1/3").value(1)[0] == Rational(1, 3));
    CHECK_THROWS(io::parse_inline_cocycle("1,0;1"));
}

TEST_CASE("JSON reports")
{
    const auto f = load("figure_eight.dcx");
    const auto b = novikov_numbers(build_equivariant(f.complex, *f.cocycle));
    const auto j = io::to_json(b);
    CHECK(j["betti"] == nlohmann::ordered_json::array({0, 1}));
    CHECK(j["euler"] == -1);
    CHECK(j["method"] == "both");
    CHECK(j["primes"].size() == 5);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(io::to_json(b, true).contains("elapsed_ms"));

    const auto c = io::to_json(novikov_shubin_check(CriticalVector({0, 0}), b));
    CHECK(c["rule"] == "theorem-1");
    CHECK(c["verdict"] == "fail");
}
