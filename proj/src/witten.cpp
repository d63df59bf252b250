#include "bltorsion/witten.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

void check_gap(const std::vector<cplx>& values, double threshold, const Tolerances& tol, double T)
{
    for (cplx z : values)
    {
        if (std::abs(std::abs(z) - threshold) < tol.gap_fraction * threshold)
            throw ResolutionError("eigenvalue of modulus " + std::to_string(std::abs(z)) + " at T = " +
                                  std::to_string(T) + " lies within " +
                                  std::to_string(100.0 * tol.gap_fraction) + "% of the threshold " +
                                  std::to_string(threshold));
    }
}

// log det of B B^T = B^T B, from det d = (-1)^N (1 - lambda) and the diagonal scalings.
cplx log_det_laplacian(const DiscreteOperators& ops)
{
    cplx log_det = ops.s1.array().log().sum() - ops.s0.array().log().sum();
    log_det += std::log((ops.n % 2 == 0 ? 1.0 : -1.0) * (1.0 - ops.holonomy));
    return 2.0 * log_det;
}

std::array<CMatrix, 2> balanced_laplacians(const DiscreteOperators& ops)
{
    const CMatrix b = ops.balanced();
    return {b.transpose() * b, b * b.transpose()};
}

double max_pairing_distance(std::vector<cplx> left, std::vector<cplx> right)
{
    double worst = 0.0;
    std::vector<bool> used(right.size(), false);
    for (cplx z : left)
    {
        std::size_t best = right.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < right.size(); ++j)
        {
            if (used[j])
                continue;
            const double d = std::abs(z - right[j]);
            if (d < dist)
            {
                dist = d;
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, dist);
    }
    return worst;
}

} // namespace

SmallSpectrum small_spectrum_dims(const CircleModel& model, double T, int n, double threshold,
                                  const Tolerances& tol)
{
    if (!(threshold > 0.0))
        throw ShapeError("small_spectrum_dims: threshold must be positive");
    const CircleModel deformed = witten_deform(model, T);
    SmallSpectrum out;
    out.large_min = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (int j = 0; j < deformed.rank(); ++j)
    {
        const DiscreteOperators ops = build_discrete(deformed.component(j), n);
        const std::array<CMatrix, 2> laps = balanced_laplacians(ops);
        for (std::size_t deg = 0; deg < 2; ++deg)
        {
            const std::vector<cplx> values = eigenvalues(laps[deg]);
            check_gap(values, threshold, tol, deformed.T);
            std::vector<cplx> small;
            cplx log_large = 0.0;
            for (cplx z : values)
            {
                if (std::abs(z) <= threshold)
                {
                    small.push_back(z);
                }
                else
                {
                    out.large_min[deg] = std::min(out.large_min[deg], std::abs(z));
                    log_large += std::log(z);
                }
            }
            // A lone small eigenvalue can sit far below the roundoff floor of
            // the dense solver; recover it from the exact determinant.
            if (small.size() == 1 && std::abs(ops.holonomy - 1.0) > 1e-12)
                small.front() = std::exp(log_det_laplacian(ops) - log_large);
            for (cplx z : small)
            {
                ++out.counts[deg];
                out.small_trace[deg] += z;
                out.small_max[deg] = std::max(out.small_max[deg], std::abs(z));
            }
        }
    }
    return out;
}

IsospectralReport conjugation_isospectral_check(const CircleModel& model, double T, int n,
                                                GradientStencil stencil)
{
    model.validate();
    if (T != 0.0 && model.f.wells == 0)
        throw ShapeError("conjugation_isospectral_check: a Morse potential is required");
    const CircleModel deformed = witten_deform(model, T);
    IsospectralReport report;
    for (int j = 0; j < model.rank(); ++j)
    {
        const DiscreteOperators base = build_discrete(model.component(j), n);
        const DiscreteOperators def = build_discrete(deformed.component(j), n);
        CVector e0(n), e0_inv(n), e1(n);
        for (int k = 0; k < n; ++k)
        {
            e0(k) = std::exp(-T * model.f_value(k * base.h));
            e0_inv(k) = 1.0 / e0(k);
            e1(k) = std::exp(-T * model.f_value((k + 0.5) * base.h));
        }
        const CMatrix left = e0.asDiagonal() * def.laplacian0() * e0_inv.asDiagonal();

        CMatrix dt;
        if (stencil == GradientStencil::exponential)
        {
            dt = e1.asDiagonal() * base.d * e0_inv.asDiagonal();
        }
        else
        {
            CMatrix average = CMatrix::Zero(n, n);
            for (int k = 0; k < n; ++k)
            {
                average(k, k) = 0.5;
                if (k + 1 < n)
                    average(k, k + 1) = 0.5;
                else
                    average(k, 0) = 0.5 * base.holonomy;
            }
            CVector slope(n);
            for (int k = 0; k < n; ++k)
                slope(k) = T * model.f_prime((k + 0.5) * base.h) * base.h;
            dt = base.d + slope.asDiagonal() * average;
        }
        const CMatrix right = base.g0.cwiseInverse().asDiagonal() * dt.transpose() * base.g1.asDiagonal() * dt;

        const std::vector<cplx> lv = eigenvalues(left);
        const std::vector<cplx> rv = eigenvalues(right);
        for (cplx z : lv)
            report.radius = std::max(report.radius, std::abs(z));
        report.mismatch = std::max(report.mismatch, max_pairing_distance(lv, rv));
    }
    report.passed = report.mismatch <= 1e-10 * report.radius;
    if (!report.passed)
        throw StencilMismatchError("conjugation_isospectral_check: spectra differ by " +
                                   std::to_string(report.mismatch) + " at spectral radius " +
                                   std::to_string(report.radius) +
                                   "; the gradient stencil does not match the difference operator");
    return report;
}

std::vector<Theorem33Row> theorem33_experiment(const CircleModel& model, const std::vector<double>& Ts, int n,
                                               const Tolerances& tol)
{
    model.validate();
    if (model.f.wells < 1)
        throw ShapeError("theorem33_experiment: a Morse potential is required");
    for (cplx l : model.holonomy)
        if (std::abs(l - 1.0) <= 1e-12)
            throw UnsupportedError("theorem33_experiment: acyclic holonomy required");

    // Exponents from the Morse data.
    const MorseSystem ms = model.morse_system();
    const double rk = model.rank();
    double chi = 0.0;
    double chi_prime = 0.0;
    double trace_f = 0.0;
    for (std::size_t i = 0; i < ms.points.size(); ++i)
    {
        const int ind = ms.points[i].index;
        const double sign = ind % 2 == 0 ? 1.0 : -1.0;
        chi += rk * sign;
        chi_prime += rk * sign * ind;
        trace_f += sign * model.f_value(ms.circle->positions[i]);
    }
    const double dimension = 1.0;

    std::vector<cplx> log_milnor;
    std::vector<DeRhamMap> maps;
    for (int j = 0; j < model.rank(); ++j)
    {
        log_milnor.push_back(std::log(model_milnor_torsion(model.component(j))));
        maps.push_back(de_rham_map(model.component(j), n));
    }

    std::vector<Theorem33Row> rows;
    for (double T : Ts)
    {
        Theorem33Row row;
        row.T = T;
        row.raw_log_ratio = 0.0;
        for (int j = 0; j < model.rank(); ++j)
        {
            const CircleModel comp = witten_deform(model.component(j), T);
            const DiscreteOperators ops = build_discrete(comp, n);
            const CMatrix b = ops.balanced();
            const std::array<CMatrix, 2> laps{b.transpose() * b, b * b.transpose()};
            std::array<CMatrix, 2> v;
            for (std::size_t deg = 0; deg < 2; ++deg)
            {
                SchurDecomposition s = schur(laps[deg]);
                check_gap(s.eigenvalues, 1.0, tol, comp.T);
                const Eigen::Index k = reorder_schur(s, [](cplx z) { return std::abs(z) <= 1.0; });
                v[deg] = s.unitary.leftCols(k);
                row.small_dims[deg] += static_cast<int>(k);
            }
            const DeRhamMap& drm = maps[static_cast<std::size_t>(j)];
            if (v[0].cols() != drm.p0.rows() || v[1].cols() != drm.p1.rows())
                throw ResolutionError("theorem33_experiment: small band dimensions (" +
                                      std::to_string(v[0].cols()) + ", " + std::to_string(v[1].cols()) +
                                      ") at T = " + std::to_string(comp.T) +
                                      " differ from the Morse counts; increase T");

            const CMatrix small_boundary = v[1].adjoint() * b * v[0];
            const CMatrix q0 = drm.p0 * ops.s0.cwiseInverse().asDiagonal() * v[0];
            const CMatrix q1 = drm.p1 * ops.s1.cwiseInverse().asDiagonal() * v[1];
            const double scale = std::max(max_abs(drm.boundary * q0), 1e-300);
            row.chain_defect = std::max(row.chain_defect, max_abs(drm.boundary * q0 - q1 * small_boundary) / scale);

            std::array<CMatrix, 2> pushed;
            const std::array<const CMatrix*, 2> q{&q0, &q1};
            for (std::size_t deg = 0; deg < 2; ++deg)
            {
                CMatrix inv;
                try
                {
                    inv = solve(*q[deg], CMatrix::Identity(q[deg]->rows(), q[deg]->rows()), tol);
                }
                catch (const SingularityError&)
                {
                    throw NumericalError("theorem33_experiment: the de Rham map restricted to the small band "
                                         "is not invertible in degree " +
                                         std::to_string(deg));
                }
                pushed[deg] = bilinear_gram(inv, bilinear_gram(v[deg], CMatrix::Identity(n, n)));
            }
            GradedComplex cw;
            cw.dims = {drm.p0.rows(), drm.p1.rows()};
            cw.differentials = {drm.boundary};
            CohomologyData h;
            h.bases = {CMatrix(cw.dims[0], 0), CMatrix(cw.dims[1], 0)};
            const cplx log_small = log_torsion_form(cw, BilinearStructure{{pushed[0], pushed[1]}}, h, tol);
            row.raw_log_ratio += log_small - log_milnor[static_cast<std::size_t>(j)];
        }
        row.log_scaling = 2.0 * rk * trace_f * T;
        if (T > 0.0)
            row.log_scaling += (0.5 * dimension * chi - chi_prime) * std::log(T / std::numbers::pi);
        row.ratio = std::exp(row.raw_log_ratio + row.log_scaling);
        rows.push_back(row);
    }
    return rows;
}

} // namespace bltorsion
