#ifndef BLTORSION_TURAEV_HPP
#define BLTORSION_TURAEV_HPP

#include <map>
#include <string>
#include <vector>

#include "bltorsion/thom_smale.hpp"
#include "bltorsion/words.hpp"

namespace bltorsion
{

/// Representation of the fundamental group on the generators. The image of
/// a generator uses the instanton holonomy convention: it is the transport of
/// the fibre back across the generator's seam, so parallel transport along a
/// path that crosses it positively is the inverse image.
struct Representation
{
    std::vector<std::string> generators;
    std::vector<CMatrix> images;
    int rank = 1;

    static Representation circle(const CMatrix& holonomy);
    static Representation circle(cplx holonomy);

    void validate() const;
    /// Parallel transport of F along a path with the given word.
    CMatrix transport(const Word& path) const;
};

/// Euler structure encoded by a spider: for every critical point a word in
/// the generators describing the path from the base point to it. On a
/// circle system the base point sits just after the seam and the word g^w
/// means "run forward to the point, then w more times around".
struct EulerStructure
{
    std::string base_point = "x0";
    std::map<std::string, Word> spider;

    static EulerStructure circle(const MorseSystem& ms, const std::map<std::string, int>& windings = {});
    int winding(const std::string& point) const;
};

/// Milnor-Turaev torsion: Milnor torsion with the forms at each critical point
/// obtained by transporting b0 from the base point along the spider.
cplx turaev_torsion(const MorseSystem& ms, const Representation& rep, const EulerStructure& e,
                    const CMatrix& b0, const std::optional<CohomologyData>& h = std::nullopt,
                    const Tolerances& tol = default_tolerances());

/// Forms b_x(u, v) = b0(P_x^{-1} u, P_x^{-1} v), P_x the spider transport.
CriticalForms transported_forms(const MorseSystem& ms, const Representation& rep,
                                const EulerStructure& e, const CMatrix& b0);

/// Class in Eul(S^1; Z) ~ Z of the pair (gradient field, spider), measured
/// against the chain minus the sum of the arcs on which the gradient is
/// positive. Requires a circle system.
int euler_class_circle(const MorseSystem& ms, const EulerStructure& e);

} // namespace bltorsion

#endif // BLTORSION_TURAEV_HPP
