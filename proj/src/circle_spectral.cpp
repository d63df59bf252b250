#include "bltorsion/circle_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bltorsion/errors.hpp"
#include "bltorsion/special_functions.hpp"

namespace bltorsion
{

namespace
{

constexpr double pi = std::numbers::pi;

double wrap_angle(double a)
{
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi)
        a += 2.0 * pi;
    if (a > pi)
        a -= 2.0 * pi;
    return a;
}

cplx wrap_log(cplx l)
{
    return {l.real(), wrap_angle(l.imag())};
}

// 2 zeta_H'(0, q) + sum_j delta^{2j} / j zeta_H(2j, q): the derivative at
// s = 0 of sum_{m>=0} ((m + q)^2 - delta^2)^{-s}.
cplx tail_derivative(cplx q, cplx delta)
{
    cplx total = 2.0 * hurwitz_zeta_derivative_at_zero(q);
    const cplx d2 = delta * delta;
    cplx power = 1.0;
    for (int j = 1; j <= 400; ++j)
    {
        power *= d2;
        const cplx term = power / static_cast<double>(j) * hurwitz_zeta(2.0 * j, q);
        total += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(total)))
            return total;
    }
    throw ConvergenceError("zeta determinant: tail series did not converge");
}

void check_band_clearance(const CircleSpectrum& sp, double band, const Tolerances& tol)
{
    const double scale = std::max(1.0, band);
    const std::vector<long> near = sp.modes_within(band + 2.0 * tol.cut_clearance * scale);
    for (long n : near)
    {
        if (sp.eigenvalue(n) == cplx(0.0))
            continue; // zero modes always belong to the band
        const double gap = std::abs(std::abs(sp.eigenvalue(n)) - band);
        if (gap <= tol.cut_clearance * scale)
            throw AmbiguousCutError("spectral cut |z| = " + std::to_string(band) + " passes within " +
                                    std::to_string(gap) + " of eigenvalue mode n = " + std::to_string(n));
    }
}

} // namespace

cplx CircleSpectrum::eigenvalue(long n) const
{
    const double s = 2.0 * pi / circumference;
    const double m = static_cast<double>(n);
    return s * s * (m + z) * (m + static_cast<double>(k) - z);
}

cplx CircleSpectrum::momentum(long n) const
{
    return cplx(0.0, 2.0 * pi / circumference) * (static_cast<double>(n) + z);
}

std::vector<long> CircleSpectrum::modes_within(double radius) const
{
    std::vector<long> out;
    if (radius < 0.0)
        return out;
    const long reach = static_cast<long>(std::ceil(circumference * std::sqrt(radius) / (2.0 * pi) + std::abs(z))) + 3;
    for (long n = -reach; n <= reach; ++n)
        if (std::abs(eigenvalue(n)) <= radius)
            out.push_back(n);
    return out;
}

std::size_t CircleSpectrum::count_within(double radius) const
{
    return modes_within(radius).size();
}

std::vector<cplx> CircleSpectrum::lowest(std::size_t count) const
{
    const long reach = static_cast<long>(count) + static_cast<long>(std::ceil(std::abs(z))) + 3;
    std::vector<cplx> values;
    for (long n = -reach; n <= reach; ++n)
        values.push_back(eigenvalue(n));
    std::stable_sort(values.begin(), values.end(),
                     [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    values.resize(std::min(count, values.size()));
    return values;
}

CircleSpectrum exact_spectrum_circle(cplx lambda, double circumference)
{
    if (lambda == cplx(0.0))
        throw ShapeError("exact_spectrum_circle: holonomy must be nonzero");
    if (!(circumference > 0.0))
        throw ShapeError("exact_spectrum_circle: circumference must be positive");
    CircleModel m;
    m.circumference = circumference;
    m.holonomy = {lambda};
    CircleSpectrum sp;
    sp.lambda = lambda;
    sp.circumference = circumference;
    sp.k = m.reference_shift(0);
    sp.z = std::log(lambda) / cplx(0.0, 2.0 * pi);
    return sp;
}

cplx log_zeta_det_exact(cplx lambda, double circumference, int degree, const ZetaOptions& options,
                        const Tolerances& tol)
{
    if (degree != 0 && degree != 1)
        throw ShapeError("zeta_det_exact: degree must be 0 or 1 on the circle");
    const CircleSpectrum sp = exact_spectrum_circle(lambda, circumference);

    std::vector<long> excluded;
    if (options.band)
    {
        check_band_clearance(sp, *options.band, tol);
        excluded = sp.modes_within(*options.band);
    }

    std::optional<double> psi;
    if (options.cut_angle)
    {
        double a = std::fmod(*options.cut_angle, 2.0 * pi);
        if (a < 0.0)
            a += 2.0 * pi;
        if (a < 0.1 || a > 2.0 * pi - 0.1)
            throw BranchError("zeta_det_exact: cut angle " + std::to_string(*options.cut_angle) +
                              " runs along the ray where the spectrum accumulates");
        psi = a;
    }

    // nu_n = (n + a)(n + b) = (n + c')^2 - delta^2
    const cplx a = static_cast<double>(sp.k) - sp.z;
    const cplx b = sp.z;
    const cplx mid = 0.5 * (a + b);
    const cplx delta = 0.5 * (a - b);
    long n0 = std::max(4L, static_cast<long>(std::ceil(2.0 * std::abs(delta) + std::abs(mid) + 2.0)));
    for (long n : excluded)
        n0 = std::max(n0, std::abs(n) + 1);

    const double sigma = std::pow(2.0 * pi / circumference, 2);
    cplx log_det = 0.0;
    for (long n = -n0 + 1; n <= n0 - 1; ++n)
    {
        if (std::find(excluded.begin(), excluded.end(), n) != excluded.end())
            continue;
        const cplx mu = sp.eigenvalue(n);
        if (std::abs(mu) <= 1e-13 * sigma)
            throw SingularityError("zeta_det_exact: zero mode n = " + std::to_string(n) +
                                   "; exclude it with a band for the primed determinant",
                                   n);
        double arg = std::arg(mu);
        if (psi)
        {
            double offset = std::fmod(*psi - arg, 2.0 * pi);
            if (offset < 0.0)
                offset += 2.0 * pi;
            if (std::min(offset, 2.0 * pi - offset) < 1e-9)
                throw BranchError("zeta_det_exact: eigenvalue of mode n = " + std::to_string(n) +
                                  " lies on the chosen branch cut");
            arg = *psi - offset;
        }
        log_det += cplx(std::log(std::abs(mu)), arg);
    }
    // Tails n >= n0 and n <= -n0; the latter is the family with a, b negated.
    const cplx q_plus = static_cast<double>(n0) + mid;
    const cplx q_minus = static_cast<double>(n0) - mid;
    const cplx zeta0_tails = (0.5 - q_plus) + (0.5 - q_minus);
    log_det += std::log(sigma) * zeta0_tails;
    log_det -= tail_derivative(q_plus, delta) + tail_derivative(q_minus, delta);
    return log_det;
}

cplx zeta_det_exact(cplx lambda, double circumference, int degree, const ZetaOptions& options,
                    const Tolerances& tol)
{
    return std::exp(log_zeta_det_exact(lambda, circumference, degree, options, tol));
}

namespace
{

using State = Eigen::Matrix2cd;

State rhs(const CircleModel& model, int degree, double x, const State& y)
{
    const cplx p = -2.0 * model.phi_prime(x, 0);
    const cplx q = degree == 1 ? -2.0 * model.phi_second(x, 0) : cplx(0.0);
    State a;
    a << 0.0, 1.0, q, p;
    return a * y;
}

} // namespace

CMatrix monodromy(const CircleModel& model, int degree, const Tolerances& tol)
{
    model.validate();
    if (model.rank() != 1)
        throw ShapeError("monodromy: rank-one model expected");
    if (degree != 0 && degree != 1)
        throw ShapeError("monodromy: degree must be 0 or 1");

    // Dormand-Prince 5(4)
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                            e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    const double len = model.circumference;
    const double floor = 1e-14 * len;
    State y = State::Identity();
    double x = 0.0;
    double h = len / 64.0;
    State k1 = rhs(model, degree, x, y);
    long steps = 0;
    while (x < len)
    {
        if (++steps > 10000000)
            throw StiffnessError("monodromy: step budget exhausted");
        h = std::min(h, len - x);
        const State k2 = rhs(model, degree, x + c2 * h, y + h * (a21 * k1));
        const State k3 = rhs(model, degree, x + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const State k4 = rhs(model, degree, x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = rhs(model, degree, x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 =
            rhs(model, degree, x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = rhs(model, degree, x + h, next);
        const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double ratio = 0.0;
        for (int i = 0; i < 4; ++i)
        {
            const double scale = tol.ode * std::max({1.0, std::abs(y(i)), std::abs(next(i))});
            ratio = std::max(ratio, std::abs(err(i)) / scale);
        }
        if (ratio <= 1.0)
        {
            x += h;
            y = next;
            k1 = k7;
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < floor && x < len)
            throw StiffnessError("monodromy: step size fell below " + std::to_string(floor) + " at x = " +
                                 std::to_string(x));
    }
    return y;
}

namespace
{

cplx raw_gelfand_yaglom(const CircleModel& model, int degree, const Tolerances& tol)
{
    const cplx l = model.holonomy.front();
    const CMatrix m = monodromy(model, degree, tol);
    const cplx sign = model.reference_class(0) == 0 ? 1.0 : -1.0;
    return sign / (l * l) * lu_det(l * CMatrix::Identity(2, 2) - m);
}

} // namespace

cplx gelfand_yaglom_normalization()
{
    static const cplx value = [] {
        CircleModel ref;
        ref.holonomy = {cplx(2.0)};
        return zeta_det_exact(2.0, ref.circumference, 0) / raw_gelfand_yaglom(ref, 0, default_tolerances());
    }();
    return value;
}

cplx gelfand_yaglom_det(const CircleModel& model, int degree, const Tolerances& tol)
{
    return gelfand_yaglom_normalization() * raw_gelfand_yaglom(model, degree, tol);
}

namespace
{

bool acyclic(cplx lambda)
{
    return std::abs(lambda - 1.0) > 1e-12;
}

CircleModel reference_of(const CircleModel& m)
{
    CircleModel r = m;
    r.phi = PhiSpec{};
    r.T = 0.0;
    r.flat_window = 0.0;
    return r;
}

RsTorsion rs_exact_component(const CircleModel& m, double cut, const Tolerances& tol)
{
    if (!m.is_reference())
        throw UnsupportedError("rs_torsion: the exact method needs phi equal to the canonical reference; "
                               "use the gelfand_yaglom or discrete method");
    if (cut < 0.0)
        throw ShapeError("rs_torsion: cut radius must be non-negative");
    const CircleSpectrum sp = exact_spectrum_circle(m.holonomy.front(), m.circumference);
    check_band_clearance(sp, cut, tol);
    const std::vector<long> modes = sp.modes_within(cut);
    const auto dim = static_cast<Eigen::Index>(modes.size());

    RsTorsion out;
    out.small_dims = {static_cast<int>(dim), static_cast<int>(dim)};
    cplx log_small = 0.0;
    if (dim > 0)
    {
        GradedComplex c;
        c.dims = {dim, dim};
        CMatrix boundary = CMatrix::Zero(dim, dim);
        CMatrix gram = CMatrix::Zero(dim, dim);
        std::vector<Eigen::Index> harmonic;
        for (Eigen::Index i = 0; i < dim; ++i)
        {
            const long n = modes[static_cast<std::size_t>(i)];
            boundary(i, i) = sp.momentum(n);
            if (std::abs(boundary(i, i)) <= 1e-14 * 2.0 * pi / m.circumference)
            {
                boundary(i, i) = 0.0;
                harmonic.push_back(i);
            }
            for (Eigen::Index j = 0; j < dim; ++j)
                if (n + modes[static_cast<std::size_t>(j)] + sp.k == 0)
                    gram(i, j) = m.circumference;
        }
        c.differentials = {boundary};
        CohomologyData h;
        for (int deg = 0; deg < 2; ++deg)
        {
            CMatrix basis = CMatrix::Zero(dim, static_cast<Eigen::Index>(harmonic.size()));
            for (std::size_t r = 0; r < harmonic.size(); ++r)
                basis(harmonic[r], static_cast<Eigen::Index>(r)) = 1.0;
            h.bases.push_back(basis);
        }
        log_small = log_torsion_form(c, BilinearStructure{{gram, gram}}, h, tol);
    }
    ZetaOptions zo;
    zo.band = cut;
    out.log_value = log_small - log_zeta_det_exact(m.holonomy.front(), m.circumference, 1, zo, tol);
    return out;
}

cplx log_discrete_torsion(const CircleModel& m, int n, const Tolerances& tol)
{
    const DiscreteOperators ops = build_discrete(m, n);
    GradedComplex c;
    c.dims = {n, n};
    c.differentials = {ops.balanced()};
    const CMatrix id = CMatrix::Identity(n, n);
    CohomologyData h;
    if (acyclic(ops.holonomy))
    {
        h.bases = {CMatrix(n, 0), CMatrix(n, 0)};
    }
    else
    {
        // Constant function and dx, in balanced coordinates.
        h.bases = {CMatrix(ops.s0), CMatrix(ops.s1 * ops.h)};
    }
    return log_torsion_form(c, BilinearStructure{{id, id}}, h, tol);
}

RsTorsion rs_discrete_component(const CircleModel& m, const std::vector<int>& grids, const Tolerances& tol)
{
    if (grids.size() != 3)
        throw ShapeError("rs_torsion: discrete method takes three grid sizes");
    for (std::size_t i = 1; i < grids.size(); ++i)
        if (grids[i] != 2 * grids[i - 1])
            throw ShapeError("rs_torsion: discrete grids must double");
    const CircleModel ref = reference_of(m);
    std::vector<cplx> ratios;
    for (int n : grids)
        ratios.push_back(wrap_log(log_discrete_torsion(m, n, tol) - log_discrete_torsion(ref, n, tol)));
    const cplx r1a = (4.0 * ratios[1] - ratios[0]) / 3.0;
    const cplx r1b = (4.0 * ratios[2] - ratios[1]) / 3.0;
    const cplx r2 = (16.0 * r1b - r1a) / 15.0;
    RsTorsion out = rs_exact_component(ref, 0.0, tol);
    out.extrapolation_error = std::abs(r1b - r1a);
    if (out.extrapolation_error > 1e-2)
        throw ConvergenceError("rs_torsion: Richardson extrapolation did not settle (difference " +
                               std::to_string(out.extrapolation_error) + ")");
    out.log_value += r2;
    return out;
}

} // namespace

RsTorsion rs_torsion(const CircleModel& model, const RsOptions& options, const Tolerances& tol)
{
    model.validate();
    RsTorsion total;
    total.log_value = 0.0;
    for (int j = 0; j < model.rank(); ++j)
    {
        const CircleModel m = model.component(j);
        RsTorsion part;
        switch (options.method)
        {
        case RsMethod::exact:
            part = rs_exact_component(m, options.cut, tol);
            break;
        case RsMethod::gelfand_yaglom:
            if (!acyclic(m.holonomy.front()))
                throw UnsupportedError("rs_torsion: the gelfand_yaglom method needs an acyclic model");
            if (m.phi.winding != 0)
                throw UnsupportedError("rs_torsion: phi must stay in the class of the reference");
            part.log_value = -std::log(gelfand_yaglom_det(m, 1, tol));
            break;
        case RsMethod::discrete:
            if (m.phi.winding != 0)
                throw UnsupportedError("rs_torsion: phi must stay in the class of the reference");
            part = rs_discrete_component(m, options.grids, tol);
            break;
        }
        total.log_value += part.log_value;
        total.small_dims[0] += part.small_dims[0];
        total.small_dims[1] += part.small_dims[1];
        total.extrapolation_error = std::max(total.extrapolation_error, part.extrapolation_error);
    }
    total.value = std::exp(total.log_value);
    return total;
}

double DeRhamMap::chain_defect(const CMatrix& d, const CMatrix& u) const
{
    return max_abs(boundary * p0 * u - p1 * d * u);
}

DeRhamMap de_rham_map(const CircleModel& model, int n)
{
    model.validate();
    if (model.rank() != 1)
        throw ShapeError("de_rham_map: rank-one model expected");
    if (n < 8)
        throw ShapeError("de_rham_map: grid size must be at least 8");
    DeRhamMap out;
    out.system = model.morse_system();
    const ThomSmaleComplex ts = build_thom_smale(out.system, CriticalForms::identity(out.system));
    out.boundary = ts.complex.differential(0);
    const std::vector<double>& pos = out.system.circle->positions;
    const std::size_t count = pos.size();
    const double h = model.circumference / n;
    const cplx l = model.holonomy.front();

    for (double x : pos)
    {
        const double frac = x / h - std::floor(x / h);
        if (std::abs(frac - 0.5) < 1e-9)
            throw ShapeError("de_rham_map: critical point at x = " + std::to_string(x) +
                             " sits on an edge midpoint; shift the grid (change N)");
    }

    const std::vector<std::size_t>& mins = ts.points_by_degree[0];
    const std::vector<std::size_t>& maxs = ts.points_by_degree[1];
    out.p0 = CMatrix::Zero(static_cast<Eigen::Index>(mins.size()), n);
    for (std::size_t r = 0; r < mins.size(); ++r)
    {
        const double t = pos[mins[r]] / h;
        auto j = static_cast<int>(std::floor(t));
        double frac = t - j;
        if (frac > 1.0 - 1e-9)
        {
            ++j;
            frac = 0.0;
        }
        const auto row = static_cast<Eigen::Index>(r);
        out.p0(row, j) += 1.0 - frac;
        if (frac > 1e-9)
        {
            if (j + 1 < n)
                out.p0(row, j + 1) += frac;
            else
                out.p0(row, 0) += frac * l;
        }
    }

    // Unstable arc of a maximum y runs from its right neighbour down to its
    // left neighbour; edges beyond the seam are carried into y's chart.
    out.p1 = CMatrix::Zero(static_cast<Eigen::Index>(maxs.size()), n);
    for (std::size_t r = 0; r < maxs.size(); ++r)
    {
        const std::size_t k = maxs[r];
        const double y = pos[k];
        const double left = pos[(k + count - 1) % count];
        const double right = pos[(k + 1) % count];
        const auto row = static_cast<Eigen::Index>(r);
        for (int e = 0; e < n; ++e)
        {
            const double mid = (e + 0.5) * h;
            cplx coeff = 0.0;
            if (left < y)
            {
                if (mid > left && mid < y)
                    coeff += 1.0;
            }
            else
            {
                if (mid > left)
                    coeff += 1.0 / l;
                if (mid < y)
                    coeff += 1.0;
            }
            if (right > y)
            {
                if (mid > y && mid < right)
                    coeff += 1.0;
            }
            else
            {
                if (mid > y)
                    coeff += 1.0;
                if (mid < right)
                    coeff += l;
            }
            out.p1(row, e) = -coeff;
        }
    }
    return out;
}

cplx model_milnor_torsion(const CircleModel& model)
{
    CircleModel m = model;
    m.T = 0.0;
    m.validate();
    const MorseSystem ms = m.morse_system();
    CriticalForms forms;
    for (std::size_t i = 0; i < ms.points.size(); ++i)
    {
        CMatrix b = CMatrix::Zero(m.rank(), m.rank());
        for (int j = 0; j < m.rank(); ++j)
            b(j, j) = std::exp(2.0 * m.phi_value(ms.circle->positions[i], j));
        forms.forms[ms.points[i].id] = b;
    }
    return milnor_torsion(ms, forms);
}

namespace
{

cplx raw_bz(const CircleModel& model, RsMethod method)
{
    RsOptions opts;
    opts.method = method;
    opts.cut = 0.0;
    const RsTorsion rs = rs_torsion(model, opts);
    return std::exp(rs.log_value - std::log(model_milnor_torsion(model)));
}

} // namespace

cplx bz_calibration()
{
    static const cplx value = [] {
        CircleModel ref;
        ref.holonomy = {cplx(2.0)};
        ref.f.wells = 1;
        return raw_bz(ref, RsMethod::exact);
    }();
    return value;
}

cplx bz_compare(const CircleModel& model, RsMethod method)
{
    model.validate();
    const ThetaForm theta = theta_form(model);
    double size = std::abs(theta.period);
    for (cplx s : theta.samples)
        size = std::max(size, std::abs(s));
    if (size > 1e-12)
        throw UnsupportedError("bz_compare: theta(F, b) is not zero relative to the canonical reference; "
                               "the comparison with Milnor torsion is out of scope, use the anomaly test");
    for (cplx l : model.holonomy)
        if (!acyclic(l))
            throw UnsupportedError("bz_compare: holonomy 1 is not acyclic; use rs_torsion with its harmonic basis");
    CircleModel m = model;
    if (m.f.wells == 0)
        m.f.wells = 1;
    return raw_bz(m, method) / bz_calibration();
}

} // namespace bltorsion
