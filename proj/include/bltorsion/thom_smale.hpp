#ifndef BLTORSION_THOM_SMALE_HPP
#define BLTORSION_THOM_SMALE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bltorsion/complex_torsion.hpp"
#include "bltorsion/errors.hpp"

namespace bltorsion
{

class InconsistentInstantonError : public ShapeError
{
public:
    InconsistentInstantonError(const std::string& from, const std::string& to)
        : ShapeError("instanton data does not square to zero between '" + from + "' and '" + to + "'"),
          from_(from), to_(to)
    {
    }
    const std::string& from() const { return from_; }
    const std::string& to() const { return to_; }

private:
    std::string from_;
    std::string to_;
};

struct CriticalPoint
{
    std::string id;
    int index = 0;
};

/// Flow line from `from` (index i) to `to` (index i - 1). `holonomy` is the
/// parallel transport of the fibre F at `to` into the fibre at `from` along the
/// reversed flow line; it is the coefficient of the dual coboundary.
struct Instanton
{
    std::string from;
    std::string to;
    int sign = 1;
    CMatrix holonomy;
};

/// Positions of critical points on a circle of circumference L, measured in
/// the flat trivialization cut at x = 0 (the seam).
struct CircleGeometry
{
    double circumference = 0.0;
    std::vector<double> positions;
};

struct MorseSystem
{
    int rank = 1;
    std::vector<CriticalPoint> points;
    std::vector<Instanton> instantons;
    std::optional<CircleGeometry> circle;

    std::size_t point_index(const std::string& id) const;
    int max_index() const;
    /// Number of critical points of each index (M_i).
    std::vector<int> index_counts() const;
    /// sum over points of (-1)^ind
    int euler_characteristic() const;
    void validate() const;
};

/// Symmetric nondegenerate rank x rank form b_x at each critical point.
struct CriticalForms
{
    std::map<std::string, CMatrix> forms;

    static CriticalForms identity(const MorseSystem& ms);
};

struct ThomSmaleComplex
{
    GradedComplex complex;
    BilinearStructure forms;
    /// Points of each degree, in the order their blocks appear.
    std::vector<std::vector<std::size_t>> points_by_degree;
};

/// Thom-Smale cochain complex with C^i = sum over index-i points of F_x and
/// the orthogonal block-diagonal form built from `forms`.
ThomSmaleComplex build_thom_smale(const MorseSystem& ms, const CriticalForms& forms,
                                  const Tolerances& tol = default_tolerances());

/// Milnor symmetric bilinear torsion. Without `h`, the representatives
/// returned by cohomology() are used.
cplx milnor_torsion(const MorseSystem& ms, const CriticalForms& forms,
                    const std::optional<CohomologyData>& h = std::nullopt,
                    const Tolerances& tol = default_tolerances());

/// Predicted ratio prod_x det(b_x^{-1} b1_x)^{(-1)^{ind x}} of Milnor torsions.
cplx milnor_anomaly_check(const MorseSystem& ms, const CriticalForms& forms,
                          const CriticalForms& forms1);

/// Circle with critical points at the given trivialization positions
/// (strictly increasing, in (0, L), alternating index 0 and 1). Unstable arcs
/// of maxima are oriented towards decreasing x; the arc that crosses the seam
/// carries `holonomy` (or its inverse when it crosses backwards).
MorseSystem circle_morse_system(const CircleGeometry& geometry, const std::vector<int>& indices,
                                const CMatrix& holonomy);

/// Height-function-like system on the circle with `pair_count` minima and
/// maxima. Point j is a minimum when j is even; it sits in slot
/// (j - seam_placement) mod 2N at position (slot + 1/2) L / 2N.
MorseSystem make_circle_morse(int pair_count, const CMatrix& holonomy, int seam_placement = 0,
                              double circumference = 1.0);

MorseSystem make_circle_morse(int pair_count, cplx holonomy, int seam_placement = 0,
                              double circumference = 1.0);

} // namespace bltorsion

#endif // BLTORSION_THOM_SMALE_HPP
