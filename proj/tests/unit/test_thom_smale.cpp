#include <random>

#include "doctest.h"

#include "bltorsion/thom_smale.hpp"
#include "oracles.hpp"

using namespace bltorsion;

namespace
{

MorseSystem two_point(cplx lambda)
{
    MorseSystem ms;
    ms.points = {{"min", 0}, {"max", 1}};
    ms.instantons = {{"max", "min", 1, CMatrix::Identity(1, 1)}, {"max", "min", -1, CMatrix::Constant(1, 1, lambda)}};
    return ms;
}

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace

TEST_SUITE("thom_smale")
{
    TEST_CASE("two-point circle coboundary")
    {
        const MorseSystem ms = two_point(3.0);
        const ThomSmaleComplex ts = build_thom_smale(ms, CriticalForms::identity(ms));
        REQUIRE(ts.complex.differentials.size() == 1);
        CHECK(std::abs(ts.complex.differentials[0](0, 0) - (1.0 - 3.0)) < 1e-15);
    }

    TEST_CASE("Milnor torsion of circles")
    {
        const MorseSystem m3 = two_point(3.0);
        CHECK(rel(milnor_torsion(m3, CriticalForms::identity(m3)), 0.25) < 1e-14);
        const MorseSystem m2 = two_point(2.0);
        CHECK(rel(milnor_torsion(m2, CriticalForms::identity(m2)), 1.0) < 1e-14);
        const MorseSystem m1 = two_point(1.0);
        CHECK(cohomology(build_thom_smale(m1, CriticalForms::identity(m1)).complex).dims() ==
              std::vector<Eigen::Index>{1, 1});
        CHECK(rel(milnor_torsion(m1, CriticalForms::identity(m1)), 1.0) < 1e-14);
    }

    TEST_CASE("rank two without instantons")
    {
        MorseSystem ms;
        ms.rank = 2;
        ms.points = {{"a", 0}, {"b", 1}};
        std::mt19937_64 rng(3);
        CriticalForms f;
        f.forms["a"] = oracle::random_symmetric(rng, 2);
        f.forms["b"] = oracle::random_symmetric(rng, 2);
        const cplx expected = oracle::cofactor_det(f.forms["a"]) / oracle::cofactor_det(f.forms["b"]);
        CohomologyData h;
        h.bases = {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)};
        CHECK(rel(milnor_torsion(ms, f, h), expected) < 1e-13);
    }

    TEST_CASE("anomaly formula")
    {
        const MorseSystem ms = two_point(3.0);
        const CriticalForms f = CriticalForms::identity(ms);
        CHECK(rel(milnor_anomaly_check(ms, f, f), 1.0) < 1e-15);
        CriticalForms g = f;
        g.forms["min"] *= 4.0;
        CHECK(rel(milnor_anomaly_check(ms, f, g), 4.0) < 1e-15);
        CHECK(rel(milnor_torsion(ms, g) / milnor_torsion(ms, f), 4.0) < 1e-13);

        std::mt19937_64 rng(7);
        const CMatrix a = oracle::random_invertible(rng, 2) * 2.0;
        const MorseSystem circle = make_circle_morse(2, a);
        CriticalForms f0;
        CriticalForms f1;
        for (const CriticalPoint& p : circle.points)
        {
            f0.forms[p.id] = oracle::random_symmetric(rng, 2);
            f1.forms[p.id] = oracle::random_symmetric(rng, 2);
        }
        CHECK(rel(milnor_torsion(circle, f1) / milnor_torsion(circle, f0), milnor_anomaly_check(circle, f0, f1)) <
              1e-9);
    }

    TEST_CASE("circle generator")
    {
        const MorseSystem one = make_circle_morse(1, cplx(3.0));
        CHECK(one.points.size() == 2);
        CHECK(rel(milnor_torsion(one, CriticalForms::identity(one)), 0.25) < 1e-14);
        const MorseSystem two = make_circle_morse(2, cplx(3.0));
        CHECK(two.points.size() == 4);
        CHECK(two.index_counts() == std::vector<int>{2, 2});
        CHECK(two.euler_characteristic() == 0);
        CHECK(rel(milnor_torsion(two, CriticalForms::identity(two)), 0.25) < 1e-14);
        const MorseSystem trivial = make_circle_morse(1, cplx(1.0));
        CHECK(cohomology(build_thom_smale(trivial, CriticalForms::identity(trivial)).complex).dims() ==
              std::vector<Eigen::Index>{1, 1});
        // Moving the seam past a flow line changes the trivialization by lambda.
        const cplx l(0.5, 2.0);
        const cplx acyclic = 1.0 / ((1.0 - l) * (1.0 - l));
        for (int seam = 0; seam < 6; ++seam)
        {
            const MorseSystem s = make_circle_morse(3, l, seam, 2.0);
            const cplx tau = milnor_torsion(s, CriticalForms::identity(s));
            CHECK(std::min(rel(tau, acyclic), rel(tau, l * l * acyclic)) < 1e-12);
        }
    }

    TEST_CASE("errors")
    {
        MorseSystem dup = two_point(2.0);
        dup.points.push_back({"min", 0});
        CHECK_THROWS_AS(dup.validate(), ShapeError);

        MorseSystem skip = two_point(2.0);
        skip.points.push_back({"top", 3});
        skip.instantons.push_back({"top", "min", 1, CMatrix::Identity(1, 1)});
        CHECK_THROWS_AS(skip.validate(), ShapeError);

        MorseSystem torus;
        torus.points = {{"m", 0}, {"a", 1}, {"M", 2}};
        torus.instantons = {{"a", "m", 1, CMatrix::Identity(1, 1)}, {"M", "a", 1, CMatrix::Identity(1, 1)}};
        CHECK_THROWS_AS(build_thom_smale(torus, CriticalForms::identity(torus)), InconsistentInstantonError);

        const MorseSystem ms = two_point(2.0);
        CriticalForms bad = CriticalForms::identity(ms);
        bad.forms["min"] = CMatrix::Zero(1, 1);
        CHECK_THROWS(milnor_torsion(ms, bad));
    }
}
