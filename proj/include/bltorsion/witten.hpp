#ifndef BLTORSION_WITTEN_HPP
#define BLTORSION_WITTEN_HPP

#include <array>
#include <vector>

#include "bltorsion/circle_spectral.hpp"

namespace bltorsion
{

struct SmallSpectrum
{
    std::array<int, 2> counts{0, 0};
    std::array<cplx, 2> small_trace{0.0, 0.0};
    std::array<double, 2> small_max{0.0, 0.0};
    std::array<double, 2> large_min{0.0, 0.0};
};

/// Counts eigenvalues of the discrete D^2_{b_T} in each degree with
/// |z| <= threshold, summed over holonomy components. An eigenvalue within
/// tol.gap_fraction * threshold of the threshold raises ResolutionError.
SmallSpectrum small_spectrum_dims(const CircleModel& model, double T, int n, double threshold = 1.0,
                                  const Tolerances& tol = default_tolerances());

enum class GradientStencil
{
    exponential, // d_T = E_1 d E_0^{-1}, the same stencil as d
    centered     // d + T (df) averaged to edges: deliberately inconsistent
};

struct IsospectralReport
{
    double mismatch = 0.0;
    double radius = 0.0;
    bool passed = false;
};

/// Compares the spectra of E_0 D^2_{b_T} E_0^{-1} and G_0^{-1} d_T^T G_1 d_T
/// in degree 0, E = e^{-T f}. Raises StencilMismatchError when the mismatch
/// exceeds 1e-10 times the spectral radius.
IsospectralReport conjugation_isospectral_check(const CircleModel& model, double T, int n,
                                                GradientStencil stencil = GradientStencil::exponential);

struct Theorem33Row
{
    double T = 0.0;
    cplx ratio;          // scaled ratio, expected to tend to 1
    cplx raw_log_ratio;  // log of P(b_small) / b^M before scaling
    double log_scaling = 0.0;
    std::array<int, 2> small_dims{0, 0};
    double chain_defect = 0.0;
};

/// For each T: small-band invariant subspaces of the deformed Laplacians,
/// their torsion pushed to the Thom-Smale complex through the de Rham map,
/// divided by the Milnor torsion and multiplied by
/// (T/pi)^{chi/2 - chi'} exp(2 rk Tr_s[f] T).
std::vector<Theorem33Row> theorem33_experiment(const CircleModel& model, const std::vector<double>& Ts, int n,
                                               const Tolerances& tol = default_tolerances());

} // namespace bltorsion

#endif // BLTORSION_WITTEN_HPP
