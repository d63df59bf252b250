#include "bltorsion/complex_torsion.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

std::string deg(std::size_t i)
{
    return "degree " + std::to_string(i);
}

Eigen::FullPivLU<CMatrix> rank_revealing(const CMatrix& m, const Tolerances& tol)
{
    Eigen::FullPivLU<CMatrix> lu(m);
    lu.setThreshold(tol.rank);
    return lu;
}

Eigen::Index rank_of(const CMatrix& m, const Tolerances& tol)
{
    if (m.size() == 0)
        return 0;
    return rank_revealing(m, tol).rank();
}

// Kernel basis of m (n columns when m has no rows).
CMatrix kernel_of(const CMatrix& m, Eigen::Index n, const Tolerances& tol)
{
    if (m.rows() == 0 || m.size() == 0)
        return CMatrix::Identity(n, n);
    auto lu = rank_revealing(m, tol);
    if (lu.rank() == n)
        return CMatrix(n, 0);
    return lu.kernel();
}

CMatrix image_of(const CMatrix& m, Eigen::Index n, const Tolerances& tol)
{
    if (m.size() == 0)
        return CMatrix(n, 0);
    auto lu = rank_revealing(m, tol);
    if (lu.rank() == 0)
        return CMatrix(n, 0);
    return lu.image(m);
}

CMatrix orthonormal_columns(const CMatrix& m)
{
    if (m.cols() == 0)
        return m;
    Eigen::HouseholderQR<CMatrix> qr(m);
    return qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
}

CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix r(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            r(i, j) = cplx(u(rng), u(rng));
    return r;
}

} // namespace

CMatrix GradedComplex::differential(std::size_t i) const
{
    if (i < differentials.size())
        return differentials[i];
    const Eigen::Index n = i < dims.size() ? dims[i] : 0;
    return CMatrix(0, n);
}

void GradedComplex::validate(const Tolerances& tol) const
{
    if (dims.empty())
        throw ShapeError("complex has no degrees");
    if (differentials.size() + 1 != dims.size())
        throw ShapeError("complex with " + std::to_string(dims.size()) + " degrees needs " +
                         std::to_string(dims.size() - 1) + " differentials, got " +
                         std::to_string(differentials.size()));
    for (std::size_t i = 0; i < differentials.size(); ++i)
    {
        const CMatrix& d = differentials[i];
        if (d.rows() != dims[i + 1] || d.cols() != dims[i])
            throw ShapeError("differential out of " + deg(i) + " is " + std::to_string(d.rows()) + "x" +
                             std::to_string(d.cols()) + ", expected " + std::to_string(dims[i + 1]) +
                             "x" + std::to_string(dims[i]));
        if (!d.allFinite())
            throw ShapeError("differential out of " + deg(i) + " has non-finite entries");
    }
    for (std::size_t i = 0; i + 1 < differentials.size(); ++i)
    {
        const CMatrix& a = differentials[i];
        const CMatrix& b = differentials[i + 1];
        if (a.size() == 0 || b.size() == 0)
            continue;
        const double scale = std::max(1.0, max_abs(a) * max_abs(b) * static_cast<double>(a.rows()));
        if (max_abs(b * a) > tol.complex_square * scale)
            throw ShapeError("differentials out of " + deg(i) + " and " + deg(i + 1) +
                             " do not compose to zero");
    }
}

void BilinearStructure::validate(const GradedComplex& c, const Tolerances& tol) const
{
    if (grams.size() != c.dims.size())
        throw ShapeError("expected " + std::to_string(c.dims.size()) + " Gram matrices, got " +
                         std::to_string(grams.size()));
    for (std::size_t i = 0; i < grams.size(); ++i)
    {
        const CMatrix& g = grams[i];
        if (g.rows() != c.dims[i] || g.cols() != c.dims[i])
            throw ShapeError("Gram matrix in " + deg(i) + " has the wrong shape");
        if (!g.allFinite())
            throw ShapeError("Gram matrix in " + deg(i) + " has non-finite entries");
        if (g.size() == 0)
            continue;
        if ((g - g.transpose()).norm() > tol.symmetry * g.norm())
            throw ShapeError("Gram matrix in " + deg(i) + " is not symmetric");
        try
        {
            (void)lu_log_det(g);
        }
        catch (const SingularityError&)
        {
            throw NondegeneracyError("Gram matrix in " + deg(i) + " is degenerate");
        }
    }
}

std::vector<Eigen::Index> CohomologyData::dims() const
{
    std::vector<Eigen::Index> out;
    out.reserve(bases.size());
    for (const CMatrix& b : bases)
        out.push_back(b.cols());
    return out;
}

CohomologyData cohomology(const GradedComplex& c, const Tolerances& tol)
{
    c.validate(tol);
    CohomologyData h;
    for (std::size_t i = 0; i < c.dims.size(); ++i)
    {
        const Eigen::Index n = c.dims[i];
        const CMatrix kernel = kernel_of(c.differential(i), n, tol);
        const CMatrix image = i == 0 ? CMatrix(n, 0) : image_of(c.differentials[i - 1], n, tol);
        const Eigen::Index classes = kernel.cols() - image.cols();
        if (classes < 0)
            throw NumericalError("cohomology: image exceeds kernel in " + deg(i) +
                                 " (rank threshold too loose)");
        if (classes == 0)
        {
            h.bases.emplace_back(n, 0);
            continue;
        }
        // Pick kernel columns spanning a complement of the coboundaries.
        const CMatrix qb = orthonormal_columns(image);
        CMatrix residual = kernel;
        if (qb.cols() > 0)
            residual -= qb * (qb.adjoint() * kernel);
        Eigen::ColPivHouseholderQR<CMatrix> qr(residual);
        CMatrix reps(n, classes);
        for (Eigen::Index j = 0; j < classes; ++j)
            reps.col(j) = kernel.col(qr.colsPermutation().indices()(j));
        h.bases.push_back(std::move(reps));
    }
    return h;
}

CohomologyData normalize_cohomology(const GradedComplex& c, const CohomologyData& h,
                                    const Tolerances& tol)
{
    c.validate(tol);
    if (h.bases.size() != c.dims.size())
        throw ShapeError("cohomology data has " + std::to_string(h.bases.size()) +
                         " degrees, complex has " + std::to_string(c.dims.size()));
    CohomologyData out;
    for (std::size_t i = 0; i < c.dims.size(); ++i)
    {
        const Eigen::Index n = c.dims[i];
        const CMatrix& reps = h.bases[i];
        if (reps.rows() != n)
            throw ShapeError("cohomology representatives in " + deg(i) + " have " +
                             std::to_string(reps.rows()) + " rows, expected " + std::to_string(n));
        const CMatrix kernel = kernel_of(c.differential(i), n, tol);
        const CMatrix image = i == 0 ? CMatrix(n, 0) : image_of(c.differentials[i - 1], n, tol);
        if (reps.cols() != kernel.cols() - image.cols())
            throw ShapeError("cohomology in " + deg(i) + " has dimension " +
                             std::to_string(kernel.cols() - image.cols()) + ", got " +
                             std::to_string(reps.cols()) + " representatives");
        if (reps.cols() == 0)
        {
            out.bases.emplace_back(n, 0);
            continue;
        }
        const CMatrix d = c.differential(i);
        if (d.rows() > 0)
        {
            const double scale = std::max(1.0, max_abs(d)) * std::max(1.0, max_abs(reps));
            if (max_abs(d * reps) > tol.cocycle * scale * static_cast<double>(n))
                throw ShapeError("cohomology representatives in " + deg(i) + " are not cocycles");
        }
        const CMatrix qk = orthonormal_columns(kernel);
        CMatrix projected = qk * (qk.adjoint() * reps);
        CMatrix stacked(n, image.cols() + projected.cols());
        stacked << image, projected;
        if (rank_of(stacked, tol) != image.cols() + projected.cols())
            throw ShapeError("cohomology representatives in " + deg(i) +
                             " are dependent modulo coboundaries");
        out.bases.push_back(std::move(projected));
    }
    return out;
}

cplx log_torsion_form(const GradedComplex& c, const BilinearStructure& b, const CohomologyData& h_in,
                      const Tolerances& tol, const LiftChoices& choices)
{
    c.validate(tol);
    b.validate(c, tol);
    const CohomologyData h = normalize_cohomology(c, h_in, tol);

    std::mt19937_64 rng(choices.seed.value_or(0));
    const bool randomize = choices.seed.has_value();

    const std::size_t degrees = c.dims.size();
    std::vector<CMatrix> lifts(degrees);
    for (std::size_t i = 0; i < degrees; ++i)
    {
        const Eigen::Index n = c.dims[i];
        const CMatrix d = c.differential(i);
        if (d.rows() == 0 || d.cols() == 0)
        {
            lifts[i] = CMatrix(n, 0);
            continue;
        }
        auto lu = rank_revealing(d, tol);
        const Eigen::Index r = lu.rank();
        CMatrix lift = CMatrix::Zero(n, r);
        for (Eigen::Index j = 0; j < r; ++j)
            lift(lu.permutationQ().indices()(j), j) = 1.0;
        if (randomize && r > 0)
        {
            const CMatrix mix = CMatrix::Identity(r, r) + 0.3 * random_matrix(rng, r, r);
            lift = lift * mix;
            const CMatrix kernel = kernel_of(d, n, tol);
            if (kernel.cols() > 0)
                lift += kernel * random_matrix(rng, kernel.cols(), r);
        }
        lifts[i] = std::move(lift);
    }

    cplx acc = 0.0;
    for (std::size_t i = 0; i < degrees; ++i)
    {
        const Eigen::Index n = c.dims[i];
        CMatrix reps = h.bases[i];
        CMatrix boundary = i == 0 ? CMatrix(n, 0) : CMatrix(c.differentials[i - 1] * lifts[i - 1]);
        if (randomize && i > 0 && reps.cols() > 0 && c.dims[i - 1] > 0)
            reps += c.differentials[i - 1] * random_matrix(rng, c.dims[i - 1], reps.cols());
        const Eigen::Index total = boundary.cols() + reps.cols() + lifts[i].cols();
        if (total != n)
            throw ShapeError("torsion_form: assembled basis in " + deg(i) + " has " +
                             std::to_string(total) + " vectors, expected " + std::to_string(n));
        if (n == 0)
            continue;
        CMatrix v(n, n);
        v << boundary, reps, lifts[i];
        const CMatrix gram = bilinear_gram(v, b.grams[i]);
        cplx log_det;
        try
        {
            log_det = lu_log_det(gram);
        }
        catch (const SingularityError&)
        {
            throw NumericalError("torsion_form: Gram matrix of the assembled basis in " + deg(i) +
                                 " is singular (ill-conditioned complex)");
        }
        acc += (i % 2 == 0) ? log_det : -log_det;
    }
    return acc;
}

cplx torsion_form(const GradedComplex& c, const BilinearStructure& b, const CohomologyData& h,
                  const Tolerances& tol, const LiftChoices& choices)
{
    return std::exp(log_torsion_form(c, b, h, tol, choices));
}

BilinearStructure transform_forms(const BilinearStructure& b, const std::vector<CMatrix>& automorphisms)
{
    if (automorphisms.size() != b.grams.size())
        throw ShapeError("expected one automorphism per degree");
    BilinearStructure out;
    for (std::size_t i = 0; i < b.grams.size(); ++i)
    {
        const CMatrix& a = automorphisms[i];
        if (a.rows() != b.grams[i].rows() || a.cols() != b.grams[i].cols())
            throw ShapeError("automorphism in " + deg(i) + " has the wrong shape");
        out.grams.push_back(bilinear_gram(a, b.grams[i]));
    }
    return out;
}

cplx anomaly_ratio(const GradedComplex& c, const BilinearStructure& b,
                   const std::vector<CMatrix>& automorphisms)
{
    if (automorphisms.size() != c.dims.size() || b.grams.size() != c.dims.size())
        throw ShapeError("anomaly_ratio: expected one automorphism and one form per degree");
    cplx ratio = 1.0;
    for (std::size_t i = 0; i < automorphisms.size(); ++i)
    {
        const CMatrix& a = automorphisms[i];
        if (a.rows() != c.dims[i] || a.cols() != c.dims[i])
            throw ShapeError("automorphism in " + deg(i) + " has the wrong shape");
        if (a.size() == 0)
            continue;
        const cplx det = lu_det(a);
        if (std::abs(det) <= default_tolerances().nondegenerate * std::pow(std::max(max_abs(a), 1e-300),
                                                                           static_cast<double>(a.rows())))
            throw SingularityError("anomaly_ratio: automorphism in " + deg(i) + " is not invertible", 0);
        const cplx sq = det * det;
        ratio *= (i % 2 == 0) ? sq : 1.0 / sq;
    }
    return ratio;
}

} // namespace bltorsion
