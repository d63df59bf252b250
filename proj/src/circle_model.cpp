#include "bltorsion/circle_model.hpp"

#include <array>
#include <cmath>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

constexpr double pi = std::numbers::pi;

double smoothstep(double t)
{
    return t * t * (3.0 - 2.0 * t);
}

double smoothstep_prime(double t)
{
    return 6.0 * t * (1.0 - t);
}

} // namespace

void CircleModel::validate() const
{
    if (!(circumference > 0.0) || !std::isfinite(circumference))
        throw ShapeError("circle model: circumference must be positive");
    if (holonomy.empty())
        throw ShapeError("circle model: holonomy list is empty");
    for (cplx l : holonomy)
        if (l == cplx(0.0) || !std::isfinite(std::abs(l)))
            throw ShapeError("circle model: holonomy must be a finite nonzero number");
    if (!std::isfinite(phi.amplitude) || !std::isfinite(T))
        throw ShapeError("circle model: phi amplitude and T must be finite");
    if (phi.kind == PhiSpec::Kind::zero && phi.amplitude != 0.0)
        throw ShapeError("circle model: phi kind 'zero' takes no amplitude");
    if (f.wells < 0)
        throw ShapeError("circle model: number of wells must be non-negative");
    if (T != 0.0 && f.wells == 0)
        throw ShapeError("circle model: Witten deformation needs a Morse potential");
    // Nondegeneracy of the undeformed form: |e^{2 phi_p}| >= e^{-2|amp|}.
    if (2.0 * std::abs(phi.amplitude) > -std::log(1e-10))
        throw ShapeError("circle model: e^{2 phi} comes within 1e-10 of zero");
    if (flat_window < 0.0)
        throw ShapeError("circle model: flat window must be non-negative");
    if (flat_window > 0.0)
    {
        if (f.wells == 0)
            throw ShapeError("circle model: flat windows need critical points");
        if (!(flat_window < circumference / (8.0 * f.wells)))
            throw ShapeError("circle model: flat windows overlap or cross the seam");
        if (phi.kind != PhiSpec::Kind::zero)
            throw UnsupportedError("circle model: flat windows are implemented for phi = 0 only");
    }
}

CircleModel CircleModel::component(int j) const
{
    CircleModel m = *this;
    m.holonomy = {holonomy.at(static_cast<std::size_t>(j))};
    return m;
}

double CircleModel::seam_angle() const
{
    return f.wells > 0 ? pi / (2.0 * f.wells) : 0.0;
}

double CircleModel::angle(double x) const
{
    return seam_angle() + 2.0 * pi * x / circumference;
}

double CircleModel::f_value(double x) const
{
    return f.wells > 0 ? std::cos(f.wells * angle(x)) : 0.0;
}

double CircleModel::f_prime(double x) const
{
    if (f.wells == 0)
        return 0.0;
    return -f.wells * std::sin(f.wells * angle(x)) * 2.0 * pi / circumference;
}

cplx CircleModel::reference_slope(int j) const
{
    const cplx l = holonomy.at(static_cast<std::size_t>(j));
    return -0.5 * std::log(l * l) / circumference;
}

int CircleModel::reference_class(int j) const
{
    const cplx l = holonomy.at(static_cast<std::size_t>(j));
    const cplx root = std::exp(0.5 * std::log(l * l));
    return std::abs(root - l) <= std::abs(root + l) ? 0 : 1;
}

int CircleModel::reference_shift(int j) const
{
    const cplx l = holonomy.at(static_cast<std::size_t>(j));
    const cplx wrap = (2.0 * std::log(l) - std::log(l * l)) / cplx(0.0, 2.0 * pi);
    return static_cast<int>(std::lround(wrap.real()));
}

double CircleModel::periodic_phi(double x) const
{
    const double p = phi.kind == PhiSpec::Kind::sin ? phi.amplitude * std::sin(angle(x)) : 0.0;
    return p - T * f_value(x);
}

double CircleModel::periodic_phi_prime(double x) const
{
    const double w = 2.0 * pi / circumference;
    const double p = phi.kind == PhiSpec::Kind::sin ? phi.amplitude * std::cos(angle(x)) * w : 0.0;
    return p - T * f_prime(x);
}

double CircleModel::periodic_phi_second(double x) const
{
    const double w = 2.0 * pi / circumference;
    const double p = phi.kind == PhiSpec::Kind::sin ? -phi.amplitude * std::sin(angle(x)) * w * w : 0.0;
    const double fpp = f.wells > 0 ? -f.wells * f.wells * std::cos(f.wells * angle(x)) * w * w : 0.0;
    return p - T * fpp;
}

std::vector<double> CircleModel::critical_positions() const
{
    std::vector<double> xs;
    for (int m = 1; m <= 2 * f.wells; ++m)
        xs.push_back((2.0 * m - 1.0) * circumference / (4.0 * f.wells));
    return xs;
}

double CircleModel::window_profile(double x) const
{
    if (flat_window == 0.0)
        return 1.0;
    double r = circumference;
    for (double p : critical_positions())
        r = std::min(r, std::abs(x - p));
    if (r <= flat_window)
        return 0.0;
    if (r >= 2.0 * flat_window)
        return 1.0;
    return smoothstep((r - flat_window) / flat_window);
}

double CircleModel::window_profile_prime(double x) const
{
    if (flat_window == 0.0)
        return 0.0;
    for (double p : critical_positions())
    {
        const double r = std::abs(x - p);
        if (r > flat_window && r < 2.0 * flat_window)
            return (x > p ? 1.0 : -1.0) * smoothstep_prime((r - flat_window) / flat_window) / flat_window;
    }
    return 0.0;
}

double CircleModel::window_scale() const
{
    const double crit = 2.0 * f.wells;
    return circumference / (circumference - 3.0 * flat_window * crit);
}

double CircleModel::reference_coordinate(double x) const
{
    if (flat_window == 0.0)
        return x;
    // Integral of the profile: x minus the deficit 1 - eta inside each window,
    // which is a cubic per piece, so 3-point Gauss-Legendre is exact.
    static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
    static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double w = flat_window;
    double deficit = 0.0;
    for (double p : critical_positions())
    {
        const std::array<double, 4> breaks{p - 2.0 * w, p - w, p + w, p + 2.0 * w};
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        {
            const double a = breaks[k];
            const double b = std::min(breaks[k + 1], x);
            if (b <= a)
                continue;
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            for (std::size_t q = 0; q < 3; ++q)
                deficit += weights[q] * half * (1.0 - window_profile(mid + half * nodes[q]));
        }
    }
    return window_scale() * (x - deficit);
}

cplx CircleModel::phi_value(double x, int j) const
{
    const cplx wind(0.0, pi * phi.winding * x / circumference);
    return periodic_phi(x) + reference_slope(j) * reference_coordinate(x) + wind;
}

cplx CircleModel::phi_prime(double x, int j) const
{
    const cplx wind(0.0, pi * phi.winding / circumference);
    const double slope = flat_window == 0.0 ? 1.0 : window_scale() * window_profile(x);
    return periodic_phi_prime(x) + reference_slope(j) * slope + wind;
}

cplx CircleModel::phi_second(double x, int j) const
{
    const double curve = flat_window == 0.0 ? 0.0 : window_scale() * window_profile_prime(x);
    return periodic_phi_second(x) + reference_slope(j) * curve;
}

bool CircleModel::is_reference() const
{
    return phi.kind == PhiSpec::Kind::zero && phi.winding == 0 && T == 0.0 && flat_window == 0.0;
}

MorseSystem CircleModel::morse_system() const
{
    if (f.wells < 1)
        throw ShapeError("circle model: no Morse potential to build a Morse system from");
    CMatrix h = CMatrix::Zero(rank(), rank());
    for (int j = 0; j < rank(); ++j)
        h(j, j) = holonomy[static_cast<std::size_t>(j)];
    return make_circle_morse(f.wells, h, 0, circumference);
}

CMatrix DiscreteOperators::adjoint() const
{
    return g0.cwiseInverse().asDiagonal() * d.transpose() * g1.asDiagonal();
}

CMatrix DiscreteOperators::laplacian0() const
{
    return adjoint() * d;
}

CMatrix DiscreteOperators::laplacian1() const
{
    return d * adjoint();
}

CMatrix DiscreteOperators::balanced() const
{
    return s1.asDiagonal() * d * s0.cwiseInverse().asDiagonal();
}

DiscreteOperators build_discrete(const CircleModel& model, int n)
{
    model.validate();
    if (model.rank() != 1)
        throw ShapeError("build_discrete: discretize one holonomy component at a time");
    if (n < 8)
        throw ShapeError("build_discrete: grid size must be at least 8, got " + std::to_string(n));
    DiscreteOperators ops;
    ops.n = n;
    ops.h = model.circumference / n;
    ops.holonomy = model.holonomy.front();
    ops.d = CMatrix::Zero(n, n);
    ops.g0.resize(n);
    ops.g1.resize(n);
    ops.s0.resize(n);
    ops.s1.resize(n);
    const double root_h = std::sqrt(ops.h);
    for (int j = 0; j < n; ++j)
    {
        ops.d(j, j) = -1.0;
        if (j + 1 < n)
            ops.d(j, j + 1) = 1.0;
        else
            ops.d(j, 0) = ops.holonomy;
        const cplx node = std::exp(model.phi_value(j * ops.h));
        const cplx mid = std::exp(model.phi_value((j + 0.5) * ops.h));
        ops.s0(j) = root_h * node;
        ops.s1(j) = mid / root_h;
        ops.g0(j) = ops.s0(j) * ops.s0(j);
        ops.g1(j) = ops.s1(j) * ops.s1(j);
    }
    return ops;
}

ThetaForm theta_form(const CircleModel& model, int n)
{
    model.validate();
    if (model.phi.winding != 0)
        throw ShapeError("theta_form: phi winds " + std::to_string(model.phi.winding) +
                         " times; the log-density must stay in the homotopy class of the reference");
    if (n < 1)
        throw ShapeError("theta_form: sample count must be positive");
    // Trace over the diagonal components of 2 (phi_j' - c_j).
    ThetaForm t;
    const double h = model.circumference / n;
    const double len = model.circumference;
    t.samples.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < model.rank(); ++r)
    {
        const cplx c = model.reference_slope(r);
        for (int j = 0; j < n; ++j)
            t.samples[static_cast<std::size_t>(j)] += 2.0 * (model.phi_prime(j * h, r) - c);
        t.period += 2.0 * (model.phi_value(len, r) - model.phi_value(0.0, r)) - 2.0 * c * len;
    }
    for (int j = 0; j < model.rank(); ++j)
        t.reference.push_back(2.0 * model.reference_slope(j));
    return t;
}

CircleModel witten_deform(const CircleModel& model, double T)
{
    CircleModel m = model;
    m.T += T;
    m.validate();
    return m;
}

} // namespace bltorsion
