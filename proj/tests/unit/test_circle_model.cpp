#include <numbers>

#include "doctest.h"

#include "bltorsion/circle_model.hpp"

using namespace bltorsion;
using std::numbers::pi;

TEST_SUITE("circle_model")
{
    TEST_CASE("reference slope and class")
    {
        CircleModel m;
        m.holonomy = {2.0, -1.0, std::polar(1.0, 2.0)};
        const double len = m.circumference;
        for (int j = 0; j < 3; ++j)
        {
            const cplx l = m.holonomy[static_cast<std::size_t>(j)];
            const double sign = m.reference_class(j) == 0 ? 1.0 : -1.0;
            CHECK(std::abs(std::exp(-m.reference_slope(j) * len) - sign * l) < 1e-13);
        }
        CHECK(m.reference_class(0) == 0);
        CHECK(m.reference_class(1) == 1);
        CHECK(m.reference_class(2) == 1);
        CHECK(m.reference_shift(0) == 0);
        CHECK(m.reference_shift(1) == 1);
        CHECK(m.reference_shift(2) == 1);
        m.holonomy = {std::polar(0.6, -2.2), std::polar(1.0, -1.8), std::polar(2.0, 1.0)};
        CHECK(m.reference_shift(0) == -1);
        CHECK(m.reference_shift(1) == -1);
        CHECK(m.reference_shift(2) == 0);
        for (int j = 0; j < 3; ++j)
            CHECK((m.reference_shift(j) + 2) % 2 == m.reference_class(j));
    }

    TEST_CASE("critical points of the potential")
    {
        CircleModel m;
        m.f.wells = 2;
        const auto xs = m.critical_positions();
        REQUIRE(xs.size() == 4);
        for (double x : xs)
            CHECK(std::abs(m.f_prime(x)) < 1e-12);
        const MorseSystem ms = m.morse_system();
        CHECK(ms.index_counts() == std::vector<int>{2, 2});
        for (std::size_t k = 0; k < ms.points.size(); ++k)
        {
            const double x = ms.circle->positions[k];
            CHECK(m.f_value(x) == doctest::Approx(ms.points[k].index == 0 ? -1.0 : 1.0));
        }
    }

    TEST_CASE("phi derivatives are consistent")
    {
        CircleModel m;
        m.phi.kind = PhiSpec::Kind::sin;
        m.phi.amplitude = 0.3;
        m.f.wells = 1;
        m.T = 1.5;
        const double h = 1e-5;
        for (double x : {0.3, 1.7, 4.0})
        {
            const cplx d1 = (m.phi_value(x + h) - m.phi_value(x - h)) / (2 * h);
            CHECK(std::abs(d1 - m.phi_prime(x)) < 1e-8);
            const cplx d2 = (m.phi_prime(x + h) - m.phi_prime(x - h)) / (2 * h);
            CHECK(std::abs(d2 - m.phi_second(x)) < 1e-7);
        }
    }

    TEST_CASE("flat window keeps the class and flattens near critical points")
    {
        CircleModel m;
        m.f.wells = 1;
        m.flat_window = 0.3;
        const cplx c = m.reference_slope(0);
        const double len = m.circumference;
        CHECK(std::abs(m.phi_value(len - 1e-12) - m.phi_value(0.0) - c * len) < 1e-9);
        for (double x : m.critical_positions())
            CHECK(std::abs(m.phi_prime(x)) < 1e-12);
    }

    TEST_CASE("Witten deformation composes additively")
    {
        CircleModel m;
        m.f.wells = 1;
        CHECK(witten_deform(m, 0.0).T == 0.0);
        CHECK(witten_deform(witten_deform(m, 3.0), 7.0).T == doctest::Approx(10.0));
        const CircleModel d = witten_deform(m, 10.0);
        CHECK(std::abs(d.phi_value(1.0) - m.phi_value(1.0) + 10.0 * m.f_value(1.0)) < 1e-12);
    }

    TEST_CASE("theta form")
    {
        CircleModel m;
        ThetaForm t = theta_form(m);
        CHECK(std::abs(t.period) == 0.0);
        for (cplx s : t.samples)
            CHECK(std::abs(s) < 1e-15);
        m.phi.kind = PhiSpec::Kind::sin;
        m.phi.amplitude = 0.3;
        t = theta_form(m, 256);
        CHECK(std::abs(t.period) < 1e-12);
        m.phi.winding = 1;
        CHECK_THROWS_AS(theta_form(m), ShapeError);
    }

    TEST_CASE("discrete operators")
    {
        CircleModel m;
        m.holonomy = {1.0};
        const DiscreteOperators ops = build_discrete(m, 8);
        const std::vector<cplx> ev = eigenvalues(ops.laplacian0());
        int zeros = 0;
        for (cplx z : ev)
            zeros += std::abs(z) < 1e-12;
        CHECK(zeros == 1);
        CHECK(max_abs(ops.d * CVector::Ones(8)) < 1e-14);

        m.holonomy = {cplx(0.3, 2.0)};
        m.phi.kind = PhiSpec::Kind::sin;
        m.phi.amplitude = 0.3;
        const DiscreteOperators bumpy = build_discrete(m, 16);
        const CMatrix b = bumpy.balanced();
        const CMatrix l0 = bumpy.s0.asDiagonal() * bumpy.laplacian0() * bumpy.s0.cwiseInverse().asDiagonal();
        CHECK(max_abs(b.transpose() * b - l0) < 1e-10 * max_abs(l0));
        CHECK_THROWS_AS(build_discrete(m, 4), ShapeError);
    }

    TEST_CASE("validation")
    {
        CircleModel m;
        m.holonomy = {0.0};
        CHECK_THROWS_AS(m.validate(), ShapeError);
        m = CircleModel{};
        m.circumference = -1.0;
        CHECK_THROWS_AS(m.validate(), ShapeError);
        m = CircleModel{};
        m.T = 1.0;
        CHECK_THROWS_AS(m.validate(), ShapeError);
        m = CircleModel{};
        m.phi.amplitude = 0.5;
        CHECK_THROWS_AS(m.validate(), ShapeError);
        m = CircleModel{};
        m.f.wells = 1;
        m.flat_window = 0.3;
        m.phi.kind = PhiSpec::Kind::sin;
        m.phi.amplitude = 0.1;
        CHECK_THROWS_AS(m.validate(), UnsupportedError);
    }
}
