#ifndef BLTORSION_CONFIG_HPP
#define BLTORSION_CONFIG_HPP

namespace bltorsion
{

// Numerical policy shared by every module. All thresholds are relative to
// the natural scale of the quantity being tested unless noted.
struct Tolerances
{
    double unitary = 1e-12;           // Schur factor unitarity, max norm
    double schur_residual = 1e-10;    // ||QTQ* - m||_F / ||m||_F
    double pivot = 1e-13;             // LU pivot vs row scale
    double symmetry = 1e-12;          // ||g - g^T|| / ||g||
    double nondegenerate = 1e-12;     // |det g| vs scale
    double isotropic = 1e-10;         // bilinear Gram-Schmidt pivot
    double cut_clearance = 1e-9;      // eigenvalue distance to a spectral cut
    double rank = 1e-10;              // rank-revealing elimination threshold
    double cocycle = 1e-10;           // ||d h|| for cohomology representatives
    double complex_square = 1e-12;    // ||d_{i+1} d_i|| vs scale
    double gap_fraction = 0.10;       // Witten counting: clearance around threshold
    double ode = 1e-12;               // monodromy integrator local tolerance

    Tolerances scaled(double factor) const
    {
        Tolerances t = *this;
        t.unitary *= factor;
        t.schur_residual *= factor;
        t.symmetry *= factor;
        t.isotropic *= factor;
        t.rank *= factor;
        t.cocycle *= factor;
        t.complex_square *= factor;
        return t;
    }
};

inline const Tolerances& default_tolerances()
{
    static const Tolerances t{};
    return t;
}

} // namespace bltorsion

#endif // BLTORSION_CONFIG_HPP
