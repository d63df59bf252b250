#include "doctest.h"

#include "bltorsion/alexander.hpp"
#include "bltorsion/errors.hpp"
#include "oracles.hpp"

using namespace bltorsion;

namespace
{

oracle::IntPoly coefficients(const LaurentPolynomial& p)
{
    return oracle::IntPoly(p.coefficients().begin(), p.coefficients().end());
}

} // namespace

TEST_SUITE("words")
{
    TEST_CASE("parse, format and reduce")
    {
        const std::vector<std::string> gens{"a", "b"};
        const Word w = parse_word("a b A B", gens);
        REQUIRE(w.size() == 4);
        CHECK(w[2] == Letter{0, -1});
        CHECK(format_word(w, gens) == "a b A B");
        CHECK(exponent_sum(w) == 0);
        CHECK(free_reduce(parse_word("a b B A b", gens)) == parse_word("b", gens));
        CHECK(free_reduce(inverse(w)).size() == 4);
        CHECK(free_reduce([&] {
                  Word ww = w;
                  const Word inv = inverse(w);
                  ww.insert(ww.end(), inv.begin(), inv.end());
                  return ww;
              }())
                  .empty());
        CHECK_THROWS_AS(parse_word("a c", gens), ShapeError);
    }
}

TEST_SUITE("alexander")
{
    TEST_CASE("Laurent arithmetic")
    {
        const LaurentPolynomial t = LaurentPolynomial::monomial(1, 1);
        const LaurentPolynomial p = t * t - t + 1;
        CHECK(p.to_string() == "t^2 - t + 1");
        CHECK(std::abs(p.evaluate(1.0) - 1.0) < 1e-15);
        const LaurentPolynomial shifted = LaurentPolynomial::monomial(-3, -2) * p;
        CHECK(shifted.normalized() == p);
        CHECK(p.reversed() == p);
        CHECK((p - p).is_zero());
        CHECK(LaurentPolynomial(1).to_string() == "1");
    }

    TEST_CASE("Fox derivatives match the hand oracles")
    {
        for (const oracle::HandFox& h : oracle::hand_fox_table())
        {
            CAPTURE(h.name);
            const KnotPresentation kp = KnotPresentation::from_strings(h.generators, h.relators);
            for (std::size_t r = 0; r < h.jacobian.size(); ++r)
                for (std::size_t g = 0; g < h.jacobian[r].size(); ++g)
                {
                    const LaurentPolynomial d = fox_derivative(kp.relators[r], static_cast<int>(g));
                    CHECK(d.low() == h.jacobian[r][g].low);
                    CHECK(coefficients(d) == h.jacobian[r][g].coeffs);
                }
            CHECK(coefficients(fox_alexander(kp)) == h.alexander);
        }
    }

    TEST_CASE("named knots")
    {
        CHECK(fox_alexander(KnotPresentation::from_strings({"x"}, {})).to_string() == "1");
        CHECK(fox_alexander(KnotPresentation::from_strings({"a", "b", "c"}, {"a b A C", "b c B A"})).to_string() ==
              "t^2 - t + 1");
        CHECK(fox_alexander(braid_presentation(3, {1, -2, 1, -2})).to_string() == "t^2 - 3t + 1");
    }

    TEST_CASE("torus knots match the closed formula")
    {
        for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 9}, {3, 4}, {3, 5}, {3, 7}})
        {
            CAPTURE(p);
            CAPTURE(q);
            std::vector<int> braid;
            for (int k = 0; k < q; ++k)
                for (int s = 1; s < p; ++s)
                    braid.push_back(s);
            CHECK(coefficients(fox_alexander(braid_presentation(p, braid))) == oracle::torus_knot_alexander(p, q));
        }
    }

    TEST_CASE("symmetry and normalization properties")
    {
        const std::vector<std::vector<int>> braids{{1, 1, 1, 2, -1, 2}, {1, 1, 1, -2, 1, -2}, {1, 1, -2, 1, -2, -2},
                                                   {1, -2, 1, -2}, {1, 2, 1, 2, 1, 2, 1, 2}};
        for (const auto& b : braids)
        {
            const LaurentPolynomial p = fox_alexander(braid_presentation(3, b));
            CHECK(p.reversed() == p);
            CHECK(std::abs(std::abs(p.evaluate(1.0)) - 1.0) < 1e-12);
            CHECK(p.low() == 0);
            CHECK(p.coeff(p.high()) > 0);
        }
    }

    TEST_CASE("errors")
    {
        CHECK_THROWS_AS(KnotPresentation::from_strings({"a", "b"}, {}), ShapeError);
        CHECK_THROWS_AS(KnotPresentation::from_strings({"a", "b"}, {"a a B"}), ShapeError);
        CHECK_THROWS_AS(braid_presentation(2, {2}), ShapeError);
    }
}
