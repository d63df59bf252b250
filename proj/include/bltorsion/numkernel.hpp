#ifndef BLTORSION_NUMKERNEL_HPP
#define BLTORSION_NUMKERNEL_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bltorsion/config.hpp"

namespace bltorsion
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Determinant by partial-pivot elimination.
cplx lu_det(const CMatrix& m);

/// Logarithm of the determinant (sum of pivot logarithms, permutation sign
/// folded in as i*pi). The imaginary part is only defined modulo 2*pi.
/// Raises SingularityError on an exactly zero pivot.
cplx lu_log_det(const CMatrix& m);

/// Solves m * x = rhs. A pivot smaller than tol.pivot times the scale of its
/// row raises SingularityError carrying the pivot index.
CMatrix solve(const CMatrix& m, const CMatrix& rhs, const Tolerances& tol = default_tolerances());

struct SchurDecomposition
{
    CMatrix unitary;           // Q
    CMatrix triangular;        // T, with m = Q T Q^*
    std::vector<cplx> eigenvalues; // diagonal of T in Schur order
};

SchurDecomposition schur(const CMatrix& m);

/// Lexicographic order: real part, then imaginary part.
void sort_spectrum(std::vector<cplx>& values);

/// All eigenvalues with multiplicity, sorted with sort_spectrum.
std::vector<cplx> eigenvalues(const CMatrix& m);

/// Reorders a Schur decomposition so the eigenvalues for which `selected`
/// holds occupy the leading diagonal block. Returns the block size.
Eigen::Index reorder_schur(SchurDecomposition& s, const std::function<bool(cplx)>& selected);

/// Closed disk |z| <= radius, the spectral cut used throughout.
struct DiskCut
{
    double radius = 1.0;
    bool contains(cplx z) const { return std::abs(z) <= radius; }
    double distance(cplx z) const { return std::abs(std::abs(z) - radius); }
};

/// Orthonormal (Hermitian) basis of the sum of generalized eigenspaces whose
/// eigenvalues satisfy the predicate. `boundary_distance` measures how far an
/// eigenvalue sits from the predicate boundary; anything closer than
/// tol.cut_clearance raises AmbiguousCutError.
CMatrix invariant_subspace(const CMatrix& m,
                           const std::function<bool(cplx)>& predicate,
                           const std::function<double(cplx)>& boundary_distance,
                           const Tolerances& tol = default_tolerances());

CMatrix invariant_subspace(const CMatrix& m, const DiskCut& cut,
                           const Tolerances& tol = default_tolerances());

/// Gram matrix V^T G V of the symmetric bilinear form G on the columns of V.
/// No complex conjugation is involved.
template <typename DerivedV, typename DerivedG>
CMatrix bilinear_gram(const Eigen::MatrixBase<DerivedV>& v, const Eigen::MatrixBase<DerivedG>& g)
{
    return v.transpose() * g * v;
}

/// Returns S with S^T g S = I for a complex symmetric nondegenerate g.
/// Isotropic pivots are resolved by mixing in another basis vector.
CMatrix bilinear_orthonormalize(const CMatrix& g, const Tolerances& tol = default_tolerances());

/// Largest absolute entry.
double max_abs(const CMatrix& m);

} // namespace bltorsion

#endif // BLTORSION_NUMKERNEL_HPP
