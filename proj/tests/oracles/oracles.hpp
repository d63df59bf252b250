#ifndef BLTORSION_TESTS_ORACLES_HPP
#define BLTORSION_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bltorsion/complex_torsion.hpp"

namespace oracle
{

using bltorsion::CMatrix;
using bltorsion::cplx;

/// Sum over permutations. Only for n <= 8.
cplx leibniz_det(const CMatrix& m);

/// Laplace expansion along rows, memoized on the set of used columns.
cplx cofactor_det(const CMatrix& m);

/// Characteristic polynomial det(zI - m) by Faddeev-LeVerrier; coefficient k
/// multiplies z^k.
std::vector<cplx> charpoly(const CMatrix& m);

cplx random_cplx(std::mt19937_64& rng);
CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols);
/// Complex symmetric, well away from singular.
CMatrix random_symmetric(std::mt19937_64& rng, Eigen::Index n);
/// Invertible, moderately conditioned.
CMatrix random_invertible(std::mt19937_64& rng, Eigen::Index n);

struct RandomComplex
{
    bltorsion::GradedComplex complex;
    bltorsion::BilinearStructure forms;
    bltorsion::CohomologyData cohomology;
};

/// Complex with prescribed dims and differential ranks, written in a random
/// basis of each degree; cohomology representatives come from that basis.
RandomComplex random_complex(std::mt19937_64& rng, const std::vector<Eigen::Index>& dims,
                             const std::vector<Eigen::Index>& ranks);

/// Random dims (total <= max_total) and ranks.
RandomComplex random_complex(std::mt19937_64& rng, Eigen::Index max_total);

/// Every (dims, ranks) pattern with total dimension <= max_total and at most
/// max_degrees degrees, leading and trailing dims nonzero.
std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>>
all_patterns(Eigen::Index max_total, std::size_t max_degrees);

/// Torsion as the value of the induced form on det C^* at the element
/// (d s_{i-1}) ^ h_i ^ s_i, with s_i spanning the orthogonal complement of
/// ker d_i. Top exterior powers are expanded as Leibniz determinants.
cplx wedge_torsion(const bltorsion::GradedComplex& c, const bltorsion::BilinearStructure& b,
                   const bltorsion::CohomologyData& h);

/// Integer polynomial, coefficient k multiplies t^k.
using IntPoly = std::vector<long long>;

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
/// Exact division; the remainder must vanish.
IntPoly poly_div(const IntPoly& a, const IntPoly& b);

/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)) for coprime p, q.
IntPoly torus_knot_alexander(int p, int q);

/// Laurent polynomial sum_k coeffs[k] t^(low + k).
struct HandLaurent
{
    int low = 0;
    IntPoly coeffs;
};

/// Presentation with its Fox Jacobian (last column removed) and Alexander
/// polynomial, both worked out by hand.
struct HandFox
{
    const char* name;
    std::vector<std::string> generators;
    std::vector<std::string> relators;
    std::vector<std::vector<HandLaurent>> jacobian;
    IntPoly alexander;
};
const std::vector<HandFox>& hand_fox_table();

/// Coefficients shifted to start at t^0, content removed, leading term positive.
IntPoly normalize(IntPoly p);

} // namespace oracle

#endif // BLTORSION_TESTS_ORACLES_HPP
