#ifndef BLTORSION_COMPLEX_TORSION_HPP
#define BLTORSION_COMPLEX_TORSION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bltorsion/numkernel.hpp"

namespace bltorsion
{

/// Finite cochain complex 0 -> C^0 -> C^1 -> ... -> C^n -> 0.
/// differentials[i] is the dims[i+1] x dims[i] matrix of the coboundary out
/// of degree i.
struct GradedComplex
{
    std::vector<Eigen::Index> dims;
    std::vector<CMatrix> differentials;

    std::size_t degree_count() const { return dims.size(); }

    /// Coboundary out of degree i, or an empty map for the top degree.
    CMatrix differential(std::size_t i) const;

    /// Checks shapes and that consecutive differentials compose to zero.
    void validate(const Tolerances& tol = default_tolerances()) const;
};

/// Per-degree complex symmetric Gram matrices of the forms b_i.
struct BilinearStructure
{
    std::vector<CMatrix> grams;

    void validate(const GradedComplex& c, const Tolerances& tol = default_tolerances()) const;
};

/// Cocycle representatives of a basis of each H^i, one column per class.
struct CohomologyData
{
    std::vector<CMatrix> bases;

    std::vector<Eigen::Index> dims() const;
};

CohomologyData cohomology(const GradedComplex& c, const Tolerances& tol = default_tolerances());

/// Validates caller-supplied representatives against `c`: shapes must match,
/// columns are re-projected onto cocycles when within tolerance, and classes
/// must be independent modulo coboundaries.
CohomologyData normalize_cohomology(const GradedComplex& c, const CohomologyData& h,
                                    const Tolerances& tol = default_tolerances());

/// Choices made while assembling the per-degree bases. With a seed, the lifts
/// are perturbed by random kernel elements and random invertible mixing, and the
/// cohomology representatives by random coboundaries. The value must not move.
struct LiftChoices
{
    std::optional<std::uint64_t> seed;
};

/// Symmetric bilinear torsion b_{det H}(sigma, sigma) for the generator sigma
/// of det H^* determined by `h`. An acyclic complex with a single 1x1
/// differential a evaluates to a^{-2}.
cplx torsion_form(const GradedComplex& c, const BilinearStructure& b, const CohomologyData& h,
                  const Tolerances& tol = default_tolerances(), const LiftChoices& choices = {});

/// Same quantity as a logarithm, for complexes whose torsion over- or
/// underflows double precision. Imaginary part defined modulo 2*pi.
cplx log_torsion_form(const GradedComplex& c, const BilinearStructure& b, const CohomologyData& h,
                      const Tolerances& tol = default_tolerances(),
                      const LiftChoices& choices = {});

/// Pulls the forms back along automorphisms: b'_i(x, y) = b_i(A_i x, A_i y).
BilinearStructure transform_forms(const BilinearStructure& b, const std::vector<CMatrix>& automorphisms);

/// Predicted torsion ratio prod_i det(A_i)^{2(-1)^i} under transform_forms.
cplx anomaly_ratio(const GradedComplex& c, const BilinearStructure& b,
                   const std::vector<CMatrix>& automorphisms);

} // namespace bltorsion

#endif // BLTORSION_COMPLEX_TORSION_HPP
