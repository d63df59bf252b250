#include <random>

#include "doctest.h"

#include "bltorsion/turaev.hpp"
#include "oracles.hpp"

using namespace bltorsion;

namespace
{

double rel(cplx a, cplx b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

std::string max_id(const MorseSystem& ms)
{
    for (const CriticalPoint& p : ms.points)
        if (p.index == 1)
            return p.id;
    return {};
}

} // namespace

TEST_SUITE("turaev")
{
    TEST_CASE("reduces to Milnor torsion on the canonical spider")
    {
        const MorseSystem ms = make_circle_morse(1, cplx(3.0));
        const Representation rep = Representation::circle(cplx(3.0));
        const EulerStructure e = EulerStructure::circle(ms);
        CHECK(rel(turaev_torsion(ms, rep, e, CMatrix::Identity(1, 1)), 0.25) < 1e-14);
        CHECK(rel(turaev_torsion(ms, rep, e, CMatrix::Constant(1, 1, 9.0)), 0.25) < 1e-14);
    }

    TEST_CASE("changing the Euler structure multiplies by lambda^2")
    {
        const cplx l(1.2, 0.7);
        const MorseSystem ms = make_circle_morse(1, l);
        const Representation rep = Representation::circle(l);
        const cplx base = turaev_torsion(ms, rep, EulerStructure::circle(ms), CMatrix::Identity(1, 1));
        const EulerStructure moved = EulerStructure::circle(ms, {{max_id(ms), 1}});
        CHECK(euler_class_circle(ms, moved) == -1);
        CHECK(rel(turaev_torsion(ms, rep, moved, CMatrix::Identity(1, 1)), base / (l * l)) < 1e-13);
    }

    TEST_CASE("Euler class bookkeeping")
    {
        const MorseSystem one = make_circle_morse(1, cplx(2.0));
        CHECK(euler_class_circle(one, EulerStructure::circle(one)) == 0);
        CHECK(euler_class_circle(one, EulerStructure::circle(one, {{max_id(one), 1}})) == -1);
        const MorseSystem two = make_circle_morse(2, cplx(2.0));
        CHECK(euler_class_circle(two, EulerStructure::circle(two)) == 0);
    }

    TEST_CASE("torsion depends only on the Euler class")
    {
        std::mt19937_64 rng(12);
        const CMatrix hol = 2.0 * oracle::random_invertible(rng, 2);
        const CMatrix b0 = oracle::random_symmetric(rng, 2);
        const Representation rep = Representation::circle(hol);
        std::map<int, cplx> seen;
        for (int pairs = 1; pairs <= 3; ++pairs)
            for (int seam = 0; seam < 2 * pairs; ++seam)
            {
                const MorseSystem ms = make_circle_morse(pairs, hol, seam, 1.5);
                for (int w = -1; w <= 1; ++w)
                {
                    const EulerStructure e = EulerStructure::circle(ms, {{ms.points.front().id, w}});
                    const int cls = euler_class_circle(ms, e);
                    const cplx tau = turaev_torsion(ms, rep, e, b0);
                    auto [it, fresh] = seen.emplace(cls, tau);
                    if (!fresh)
                        CHECK(rel(tau, it->second) < 1e-12);
                }
            }
        CHECK(seen.size() >= 3);
    }

    TEST_CASE("transport along words")
    {
        const cplx l(0.0, 2.0);
        const Representation rep = Representation::circle(l);
        CHECK(std::abs(rep.transport({}).trace() - 1.0) < 1e-15);
        CHECK(std::abs(rep.transport({{0, 1}})(0, 0) - 1.0 / l) < 1e-15);
        CHECK(std::abs(rep.transport({{0, -1}, {0, -1}})(0, 0) - l * l) < 1e-14);
    }

    TEST_CASE("errors")
    {
        MorseSystem sphere;
        sphere.points = {{"s", 0}, {"n", 2}};
        CHECK_THROWS_AS(turaev_torsion(sphere, Representation::circle(cplx(2.0)), EulerStructure{},
                                       CMatrix::Identity(1, 1)),
                        UnsupportedError);

        MorseSystem no_circle;
        no_circle.points = {{"a", 0}, {"b", 1}};
        CHECK_THROWS_AS(euler_class_circle(no_circle, EulerStructure{}), UnsupportedError);

        const MorseSystem ms = make_circle_morse(1, cplx(3.0));
        CHECK_THROWS_AS(turaev_torsion(ms, Representation::circle(cplx(5.0)), EulerStructure::circle(ms),
                                       CMatrix::Identity(1, 1)),
                        ShapeError);
        CHECK_THROWS_AS(EulerStructure::circle(ms, {{"nowhere", 1}}), ShapeError);
    }
}
