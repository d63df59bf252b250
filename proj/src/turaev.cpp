#include "bltorsion/turaev.hpp"

#include <cmath>

namespace bltorsion
{

Representation Representation::circle(const CMatrix& holonomy)
{
    Representation rep;
    rep.generators = {"g"};
    rep.images = {holonomy};
    rep.rank = static_cast<int>(holonomy.rows());
    rep.validate();
    return rep;
}

Representation Representation::circle(cplx holonomy)
{
    return circle(CMatrix::Constant(1, 1, holonomy));
}

void Representation::validate() const
{
    if (generators.size() != images.size())
        throw ShapeError("representation needs one image per generator");
    for (std::size_t g = 0; g < images.size(); ++g)
    {
        const CMatrix& m = images[g];
        if (m.rows() != rank || m.cols() != rank)
            throw ShapeError("image of generator '" + generators[g] + "' is not rank x rank");
        if (std::abs(lu_det(m)) == 0.0)
            throw ShapeError("image of generator '" + generators[g] + "' is not invertible");
    }
}

CMatrix Representation::transport(const Word& path) const
{
    CMatrix p = CMatrix::Identity(rank, rank);
    for (const Letter& l : path)
    {
        const CMatrix& m = images.at(static_cast<std::size_t>(l.generator));
        const CMatrix step = l.exponent > 0 ? solve(m, CMatrix::Identity(rank, rank)) : m;
        p = step * p;
    }
    return p;
}

EulerStructure EulerStructure::circle(const MorseSystem& ms, const std::map<std::string, int>& windings)
{
    EulerStructure e;
    for (const CriticalPoint& p : ms.points)
    {
        auto it = windings.find(p.id);
        const int w = it == windings.end() ? 0 : it->second;
        e.spider[p.id] = Word(static_cast<std::size_t>(std::abs(w)), Letter{0, w >= 0 ? 1 : -1});
    }
    for (const auto& [id, w] : windings)
        (void)ms.point_index(id);
    return e;
}

int EulerStructure::winding(const std::string& point) const
{
    auto it = spider.find(point);
    if (it == spider.end())
        throw ShapeError("spider has no path to critical point '" + point + "'");
    return exponent_sum(it->second);
}

CriticalForms transported_forms(const MorseSystem& ms, const Representation& rep, const EulerStructure& e,
                                const CMatrix& b0)
{
    rep.validate();
    if (rep.rank != ms.rank)
        throw ShapeError("representation rank differs from the Morse system rank");
    if (b0.rows() != ms.rank || b0.cols() != ms.rank)
        throw ShapeError("base form b0 is not rank x rank");
    CriticalForms out;
    for (const CriticalPoint& p : ms.points)
    {
        auto it = e.spider.find(p.id);
        if (it == e.spider.end())
            throw ShapeError("spider has no path to critical point '" + p.id + "'");
        const CMatrix back = solve(rep.transport(it->second), CMatrix::Identity(ms.rank, ms.rank));
        out.forms[p.id] = bilinear_gram(back, b0);
    }
    return out;
}

namespace
{

void check_circle_holonomies(const MorseSystem& ms, const Representation& rep)
{
    if (!ms.circle || rep.images.size() != 1)
        return;
    const CMatrix& h = rep.images.front();
    const CMatrix id = CMatrix::Identity(ms.rank, ms.rank);
    const CMatrix hinv = solve(h, id);
    for (const Instanton& g : ms.instantons)
    {
        const double scale = std::max(1.0, max_abs(g.holonomy));
        const bool ok = max_abs(g.holonomy - id) <= 1e-12 * scale || max_abs(g.holonomy - h) <= 1e-12 * scale ||
                        max_abs(g.holonomy - hinv) <= 1e-12 * scale;
        if (!ok)
            throw ShapeError("instanton '" + g.from + "' -> '" + g.to +
                             "' holonomy is not the image of a path in the representation");
    }
}

} // namespace

cplx turaev_torsion(const MorseSystem& ms, const Representation& rep, const EulerStructure& e, const CMatrix& b0,
                    const std::optional<CohomologyData>& h, const Tolerances& tol)
{
    ms.validate();
    if (ms.euler_characteristic() != 0)
        throw UnsupportedError("turaev_torsion: Euler characteristic is " +
                               std::to_string(ms.euler_characteristic()) + ", only chi = 0 is supported");
    check_circle_holonomies(ms, rep);
    return milnor_torsion(ms, transported_forms(ms, rep, e, b0), h, tol);
}

int euler_class_circle(const MorseSystem& ms, const EulerStructure& e)
{
    if (!ms.circle)
        throw UnsupportedError("euler_class_circle: Morse system carries no circle geometry");
    const CircleGeometry& geo = *ms.circle;
    const std::size_t n = ms.points.size();
    if (geo.positions.size() != n)
        throw ShapeError("euler_class_circle: geometry does not match the critical points");
    const double len = geo.circumference;

    // Signed length of sum (-1)^ind sigma_x, each sigma_x running forward from
    // the seam to x and then w_x times around.
    double chain = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double sign = ms.points[k].index % 2 == 0 ? 1.0 : -1.0;
        chain += sign * (geo.positions[k] + e.winding(ms.points[k].id) * len);
    }
    // Reference chain: minus the arcs running forward from a minimum to the
    // next maximum (where the gradient is positive).
    double reference = 0.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        if (ms.points[k].index != 0)
            continue;
        const std::size_t next = (k + 1) % n;
        double arc = geo.positions[next] - geo.positions[k];
        if (arc <= 0.0)
            arc += len;
        reference -= arc;
    }
    const double cls = (chain - reference) / len;
    const double rounded = std::round(cls);
    if (std::abs(cls - rounded) > 1e-9)
        throw ShapeError("euler_class_circle: spider does not close up to an integral cycle");
    return static_cast<int>(rounded);
}

} // namespace bltorsion
