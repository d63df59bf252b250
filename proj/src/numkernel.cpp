#include "bltorsion/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

void require_square(const CMatrix& m, const char* where)
{
    if (m.rows() != m.cols())
        throw ShapeError(std::string(where) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
}

// In-place partial-pivot LU. Returns the number of row swaps; stops at the
// first exactly-zero column and reports it through `zero_pivot`.
int lu_in_place(CMatrix& a, std::vector<Eigen::Index>& perm, Eigen::Index& zero_pivot)
{
    const Eigen::Index n = a.rows();
    perm.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        perm[i] = i;
    int swaps = 0;
    zero_pivot = -1;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        Eigen::Index p;
        const double best = a.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
        p += k;
        if (best == 0.0)
        {
            zero_pivot = k;
            return swaps;
        }
        if (p != k)
        {
            a.row(k).swap(a.row(p));
            std::swap(perm[k], perm[p]);
            ++swaps;
        }
        const cplx pivot = a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i)
        {
            const cplx l = a(i, k) / pivot;
            a(i, k) = l;
            if (l != cplx(0.0))
                a.row(i).tail(n - k - 1) -= l * a.row(k).tail(n - k - 1);
        }
    }
    return swaps;
}

} // namespace

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

cplx lu_det(const CMatrix& m)
{
    require_square(m, "lu_det");
    CMatrix a = m;
    std::vector<Eigen::Index> perm;
    Eigen::Index zero = -1;
    const int swaps = lu_in_place(a, perm, zero);
    if (zero >= 0)
        return 0.0;
    cplx det = (swaps % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index k = 0; k < a.rows(); ++k)
        det *= a(k, k);
    return det;
}

cplx lu_log_det(const CMatrix& m)
{
    require_square(m, "lu_log_det");
    CMatrix a = m;
    std::vector<Eigen::Index> perm;
    Eigen::Index zero = -1;
    const int swaps = lu_in_place(a, perm, zero);
    if (zero >= 0)
        throw SingularityError("lu_log_det: matrix is singular", zero);
    cplx acc = (swaps % 2 == 0) ? cplx(0.0) : cplx(0.0, std::numbers::pi);
    for (Eigen::Index k = 0; k < a.rows(); ++k)
        acc += std::log(a(k, k));
    return acc;
}

CMatrix solve(const CMatrix& m, const CMatrix& rhs, const Tolerances& tol)
{
    require_square(m, "solve");
    if (rhs.rows() != m.rows())
        throw ShapeError("solve: right-hand side has " + std::to_string(rhs.rows()) +
                         " rows, expected " + std::to_string(m.rows()));
    const Eigen::Index n = m.rows();
    Eigen::VectorXd row_scale = m.cwiseAbs().rowwise().maxCoeff();

    CMatrix a = m;
    std::vector<Eigen::Index> perm;
    Eigen::Index zero = -1;
    lu_in_place(a, perm, zero);
    if (zero >= 0)
        throw SingularityError("solve: matrix is singular", zero);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const double scale = row_scale(perm[k]);
        if (std::abs(a(k, k)) <= tol.pivot * scale)
            throw SingularityError("solve: pivot below tolerance", k);
    }

    CMatrix x(n, rhs.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        x.row(i) = rhs.row(perm[i]);
    a.triangularView<Eigen::UnitLower>().solveInPlace(x);
    a.triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
}

SchurDecomposition schur(const CMatrix& m)
{
    require_square(m, "schur");
    const Eigen::Index n = m.rows();
    if (n == 0)
        throw ShapeError("schur: empty matrix");
    Eigen::ComplexSchur<CMatrix> cs(n);
    cs.setMaxIterations(std::max<Eigen::Index>(50 * n * n, 100));
    cs.compute(m, true);
    if (cs.info() != Eigen::Success)
        throw ConvergenceError("schur: shifted QR did not converge for the " + std::to_string(n) +
                               "x" + std::to_string(n) + " block");
    SchurDecomposition s;
    s.unitary = cs.matrixU();
    s.triangular = cs.matrixT();
    s.triangular.triangularView<Eigen::StrictlyLower>().setZero();
    s.eigenvalues.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        s.eigenvalues[static_cast<std::size_t>(i)] = s.triangular(i, i);
    return s;
}

void sort_spectrum(std::vector<cplx>& values)
{
    std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::vector<cplx> eigenvalues(const CMatrix& m)
{
    require_square(m, "eigenvalues");
    const Eigen::Index n = m.rows();
    if (n == 0)
        return {};
    Eigen::ComplexSchur<CMatrix> cs(n);
    cs.setMaxIterations(std::max<Eigen::Index>(50 * n * n, 100));
    cs.compute(m, false);
    if (cs.info() != Eigen::Success)
        throw ConvergenceError("eigenvalues: shifted QR did not converge for the " + std::to_string(n) + "x" +
                               std::to_string(n) + " block");
    std::vector<cplx> values(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] = cs.matrixT()(i, i);
    sort_spectrum(values);
    return values;
}

namespace
{

// Swaps diagonal entries k and k+1 of the triangular factor with a unitary
// rotation, updating Q accordingly.
void swap_adjacent(SchurDecomposition& s, Eigen::Index k)
{
    CMatrix& t = s.triangular;
    const cplx t11 = t(k, k);
    const cplx t22 = t(k + 1, k + 1);
    const cplx t12 = t(k, k + 1);
    cplx x1 = t12;
    cplx x2 = t22 - t11;
    const double nrm = std::hypot(std::abs(x1), std::abs(x2));
    if (nrm == 0.0)
        return; // equal eigenvalues with zero coupling: nothing to do
    x1 /= nrm;
    x2 /= nrm;
    Eigen::Matrix2cd z;
    z << x1, -std::conj(x2), x2, std::conj(x1);

    t.middleRows(k, 2) = (z.adjoint() * t.middleRows(k, 2)).eval();
    t.middleCols(k, 2) = (t.middleCols(k, 2) * z).eval();
    s.unitary.middleCols(k, 2) = (s.unitary.middleCols(k, 2) * z).eval();
    t(k + 1, k) = 0.0;
    t(k, k) = t22;
    t(k + 1, k + 1) = t11;
}

} // namespace

Eigen::Index reorder_schur(SchurDecomposition& s, const std::function<bool(cplx)>& selected)
{
    const Eigen::Index n = s.triangular.rows();
    Eigen::Index front = 0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (!selected(s.triangular(i, i)))
            continue;
        for (Eigen::Index k = i; k > front; --k)
            swap_adjacent(s, k - 1);
        ++front;
    }
    for (Eigen::Index i = 0; i < n; ++i)
        s.eigenvalues[i] = s.triangular(i, i);
    return front;
}

CMatrix invariant_subspace(const CMatrix& m,
                           const std::function<bool(cplx)>& predicate,
                           const std::function<double(cplx)>& boundary_distance,
                           const Tolerances& tol)
{
    SchurDecomposition s = schur(m);
    for (const cplx z : s.eigenvalues)
    {
        if (boundary_distance(z) < tol.cut_clearance)
            throw AmbiguousCutError("invariant_subspace: eigenvalue (" + std::to_string(z.real()) +
                                    ", " + std::to_string(z.imag()) +
                                    ") lies within clearance of the cut");
    }
    const Eigen::Index k = reorder_schur(s, predicate);
    return s.unitary.leftCols(k);
}

CMatrix invariant_subspace(const CMatrix& m, const DiskCut& cut, const Tolerances& tol)
{
    return invariant_subspace(
        m, [&](cplx z) { return cut.contains(z); }, [&](cplx z) { return cut.distance(z); }, tol);
}

CMatrix bilinear_orthonormalize(const CMatrix& g, const Tolerances& tol)
{
    require_square(g, "bilinear_orthonormalize");
    const Eigen::Index n = g.rows();
    const double scale = std::max(max_abs(g), 1e-300);
    if ((g - g.transpose()).norm() > tol.symmetry * std::max(g.norm(), 1e-300))
        throw ShapeError("bilinear_orthonormalize: Gram matrix is not symmetric");
    if (n > 0 && std::abs(lu_det(g / scale)) <= tol.nondegenerate)
        throw NondegeneracyError("bilinear_orthonormalize: form is degenerate");

    auto form = [&](const CVector& a, const CVector& b) -> cplx { return a.transpose() * g * b; };

    // Columns of `pending` are the not-yet-processed basis vectors.
    std::vector<CVector> pending;
    for (Eigen::Index j = 0; j < n; ++j)
        pending.push_back(CVector::Unit(n, j));

    CMatrix s(n, n);
    for (Eigen::Index out = 0; out < n; ++out)
    {
        std::size_t best = 0;
        double best_mag = -1.0;
        for (std::size_t j = 0; j < pending.size(); ++j)
        {
            const double mag = std::abs(form(pending[j], pending[j]));
            if (mag > best_mag)
            {
                best_mag = mag;
                best = j;
            }
        }
        CVector v = pending[best];
        if (best_mag < tol.isotropic * scale)
        {
            // Every remaining diagonal entry is isotropic: mix in the partner
            // that maximizes |<v+w, v+w>|.
            std::size_t partner = pending.size();
            double partner_mag = -1.0;
            for (std::size_t j = 0; j < pending.size(); ++j)
            {
                if (j == best)
                    continue;
                const CVector w = v + pending[j];
                const double mag = std::abs(form(w, w));
                if (mag > partner_mag)
                {
                    partner_mag = mag;
                    partner = j;
                }
            }
            if (partner == pending.size() || partner_mag < tol.isotropic * scale)
                throw NondegeneracyError("bilinear_orthonormalize: no anisotropic combination found");
            v += pending[partner];
        }
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));

        const cplx norm2 = form(v, v);
        v /= std::sqrt(norm2);
        for (CVector& w : pending)
            w -= form(w, v) * v;
        s.col(out) = v;
    }
    return s;
}

} // namespace bltorsion
