#ifndef BLTORSION_CIRCLE_MODEL_HPP
#define BLTORSION_CIRCLE_MODEL_HPP

#include <numbers>
#include <vector>

#include "bltorsion/numkernel.hpp"
#include "bltorsion/thom_smale.hpp"

namespace bltorsion
{

/// Periodic part of the log-density. `winding` adds i*pi*w*x/L, which keeps
/// b well defined but moves it to another homotopy class.
struct PhiSpec
{
    enum class Kind
    {
        zero,
        sin
    };
    Kind kind = Kind::zero;
    double amplitude = 0.0;
    int winding = 0;
};

/// Morse potential f = cos(wells * angle); wells = 0 means no potential.
struct PotentialSpec
{
    int wells = 0;
};

/// Flat line bundles with holonomies `holonomy[j]` on a circle of length L,
/// carrying b = e^{2 phi_j}. In the flat trivialization on [0, L),
///   phi_j(x) = phi_p(x) - T f(x) + c_j R(x),
/// where c_j = -Log(lambda_j^2) / (2L) is the canonical reference slope and
/// R(x) = x, or a version of x that is constant near the critical points of f
/// when `flat_window` > 0. Points of the circle have the physical angle
/// seam_angle() + 2 pi x / L.
struct CircleModel
{
    double circumference = 2.0 * std::numbers::pi;
    std::vector<cplx> holonomy{cplx(2.0)};
    PhiSpec phi;
    PotentialSpec f;
    double T = 0.0;
    double flat_window = 0.0;

    int rank() const { return static_cast<int>(holonomy.size()); }
    void validate() const;

    /// Rank-one model for the j-th diagonal entry of the holonomy.
    CircleModel component(int j) const;

    double seam_angle() const;
    double angle(double x) const;

    double f_value(double x) const;
    double f_prime(double x) const;

    /// Reference slope c_j and class k_j in {0, 1} with e^{-c_j L} = (-1)^k_j lambda_j.
    cplx reference_slope(int j = 0) const;
    int reference_class(int j = 0) const;
    /// Signed k in {-1, 0, 1} with e^{-c_j L} = (-1)^k lambda_j, taken from the
    /// principal branches: 2 Log(lambda) - Log(lambda^2) = 2 pi i k.
    int reference_shift(int j = 0) const;

    /// Single-valued part phi_p - T f, with derivatives.
    double periodic_phi(double x) const;
    double periodic_phi_prime(double x) const;
    double periodic_phi_second(double x) const;

    cplx phi_value(double x, int j = 0) const;
    cplx phi_prime(double x, int j = 0) const;
    cplx phi_second(double x, int j = 0) const;

    /// True when phi reduces to the canonical reference c_j x.
    bool is_reference() const;

    /// Critical points of f (in increasing x), index 0 at minima.
    std::vector<double> critical_positions() const;
    MorseSystem morse_system() const;

private:
    double window_profile(double x) const;
    double window_profile_prime(double x) const;
    double reference_coordinate(double x) const;
    double window_scale() const;
};

/// Staggered-grid discretization of one rank-one component. 0-forms live on
/// nodes x_j = j h, 1-forms on the edges [x_j, x_{j+1}] and are stored as
/// edge integrals. The seam edge N-1 carries the holonomy.
struct DiscreteOperators
{
    int n = 0;
    double h = 0.0;
    cplx holonomy = 1.0;
    CMatrix d;      // forward difference, N x N
    CVector g0;     // diagonal of G_0 = h e^{2 phi(x_j)}
    CVector g1;     // diagonal of G_1 = e^{2 phi(x_{j+1/2})} / h
    CVector s0;     // square roots of g0 via e^{phi}
    CVector s1;     // square roots of g1 via e^{phi}

    /// d*_b = G_0^{-1} d^T G_1
    CMatrix adjoint() const;
    CMatrix laplacian0() const;
    CMatrix laplacian1() const;

    /// S_1 d S_0^{-1}: in these coordinates both forms are the identity and
    /// the Laplacians become B^T B and B B^T.
    CMatrix balanced() const;
};

/// Requires a rank-one model and N >= 8.
DiscreteOperators build_discrete(const CircleModel& model, int n);

struct ThetaForm
{
    std::vector<cplx> samples; // theta relative to the reference, at the nodes of an N-grid
    cplx period = 0.0;
    std::vector<cplx> reference;  // 2 c_j, the constant carried by the canonical reference
};

/// Kamber-Tondeur form of the model. Rejects a nonzero winding.
ThetaForm theta_form(const CircleModel& model, int n = 64);

CircleModel witten_deform(const CircleModel& model, double T);

} // namespace bltorsion

#endif // BLTORSION_CIRCLE_MODEL_HPP
