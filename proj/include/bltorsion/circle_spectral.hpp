#ifndef BLTORSION_CIRCLE_SPECTRAL_HPP
#define BLTORSION_CIRCLE_SPECTRAL_HPP

#include <array>
#include <optional>
#include <vector>

#include "bltorsion/circle_model.hpp"
#include "bltorsion/complex_torsion.hpp"

namespace bltorsion
{

/// Spectrum of D_b^2 for the rank-one model with b = e^{2 c x} (the canonical
/// reference). Both degrees carry the same family
///   mu_n = (2 pi / L)^2 (n + z)(n + k - z),  z = Log(lambda) / (2 pi i),
/// k = CircleModel::reference_shift in {-1, 0, 1}, with eigenforms
/// u_n = e^{i kappa_n x}, kappa_n = 2 pi (n + z) / L, and u_n dx. The b-pairing of u_n and u_m is L when n + m + k = 0 and 0 otherwise.
struct CircleSpectrum
{
    cplx lambda;
    double circumference = 0.0;
    int k = 0;
    cplx z;

    cplx eigenvalue(long n) const;
    /// i kappa_n, the coefficient of d on u_n.
    cplx momentum(long n) const;
    /// Modes with |mu_n| <= radius, in increasing n.
    std::vector<long> modes_within(double radius) const;
    std::size_t count_within(double radius) const;
    /// The `count` eigenvalues of smallest modulus, by increasing modulus.
    std::vector<cplx> lowest(std::size_t count) const;
};

CircleSpectrum exact_spectrum_circle(cplx lambda, double circumference);

/// Options for the zeta determinant. Without `cut_angle`, the finitely many
/// eigenvalues handled explicitly use the principal logarithm; the value does
/// not depend on that choice. An explicit cut angle psi means log z has its
/// imaginary part in (psi - 2 pi, psi]; it must keep clear of every eigenvalue
/// and of the positive axis, along which the spectrum accumulates.
struct ZetaOptions
{
    std::optional<double> band;      // exclude the modes with |mu| <= band
    std::optional<double> cut_angle;
};

/// Log of the zeta-regularized determinant of D^2_{b,degree} restricted to
/// the complement of the band, via the Hurwitz zeta function.
cplx log_zeta_det_exact(cplx lambda, double circumference, int degree, const ZetaOptions& options = {},
                        const Tolerances& tol = default_tolerances());
cplx zeta_det_exact(cplx lambda, double circumference, int degree, const ZetaOptions& options = {},
                    const Tolerances& tol = default_tolerances());

/// Monodromy of y'' = p y' + q y over one period for the operator of the given
/// degree, started from the identity in the flat trivialization.
CMatrix monodromy(const CircleModel& model, int degree, const Tolerances& tol = default_tolerances());

/// Normalization C in det = C (-1)^k lambda^{-2} det(lambda - M), fixed once
/// against zeta_det_exact for the reference model at lambda = 2, L = 2 pi.
cplx gelfand_yaglom_normalization();

/// Determinant of D^2_{b,degree} for a rank-one model with variable phi.
cplx gelfand_yaglom_det(const CircleModel& model, int degree, const Tolerances& tol = default_tolerances());

enum class RsMethod
{
    exact,
    gelfand_yaglom,
    discrete
};

struct RsTorsion
{
    cplx value;
    cplx log_value;
    std::array<int, 2> small_dims{0, 0};
    double extrapolation_error = 0.0;
};

struct RsOptions
{
    double cut = 0.5;
    RsMethod method = RsMethod::exact;
    std::vector<int> grids{128, 256, 512};
};

/// Ray-Singer bilinear torsion, multiplied over the holonomy components.
/// exact: canonical reference only, small-band complex in the u_n basis and
/// Hurwitz determinants. gelfand_yaglom: acyclic models, a = 0 with monodromy
/// determinants. discrete: exact value of the reference model times the ratio
/// of staggered-grid torsions, Richardson-extrapolated in 1/N^2.
RsTorsion rs_torsion(const CircleModel& model, const RsOptions& options = {},
                     const Tolerances& tol = default_tolerances());

/// Thom-Smale cochains of grid forms. Rows follow build_thom_smale's
/// points_by_degree ordering for model.morse_system().
struct DeRhamMap
{
    CMatrix p0; // minima x nodes
    CMatrix p1; // maxima x edges
    CMatrix boundary; // Thom-Smale coboundary
    MorseSystem system;

    /// max |d_W P0 u - P1 d u| over the columns of u
    double chain_defect(const CMatrix& d, const CMatrix& u) const;
};

DeRhamMap de_rham_map(const CircleModel& model, int n);

/// Milnor torsion of the model's Morse system with b_x = e^{2 phi(x)} on each
/// component (the undeformed phi, T = 0).
cplx model_milnor_torsion(const CircleModel& model);

/// Value of rs / milnor at lambda = 2, L = 2 pi, one well; computed once.
cplx bz_calibration();

/// Ray-Singer over Milnor, divided by the calibration. Requires theta = 0 and
/// an acyclic model.
cplx bz_compare(const CircleModel& model, RsMethod method = RsMethod::exact);

} // namespace bltorsion

#endif // BLTORSION_CIRCLE_SPECTRAL_HPP
