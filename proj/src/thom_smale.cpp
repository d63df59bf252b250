#include "bltorsion/thom_smale.hpp"

#include <algorithm>
#include <cmath>

namespace bltorsion
{

std::size_t MorseSystem::point_index(const std::string& id) const
{
    for (std::size_t k = 0; k < points.size(); ++k)
        if (points[k].id == id)
            return k;
    throw ShapeError("unknown critical point '" + id + "'");
}

int MorseSystem::max_index() const
{
    int top = 0;
    for (const CriticalPoint& p : points)
        top = std::max(top, p.index);
    return top;
}

std::vector<int> MorseSystem::index_counts() const
{
    std::vector<int> counts(static_cast<std::size_t>(max_index()) + 1, 0);
    for (const CriticalPoint& p : points)
        ++counts[static_cast<std::size_t>(p.index)];
    return counts;
}

int MorseSystem::euler_characteristic() const
{
    int chi = 0;
    for (const CriticalPoint& p : points)
        chi += (p.index % 2 == 0) ? 1 : -1;
    return chi;
}

void MorseSystem::validate() const
{
    if (rank < 1)
        throw ShapeError("Morse system rank must be positive");
    if (points.empty())
        throw ShapeError("Morse system has no critical points");
    for (std::size_t a = 0; a < points.size(); ++a)
    {
        if (points[a].index < 0)
            throw ShapeError("critical point '" + points[a].id + "' has negative index");
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (points[a].id == points[b].id)
                throw ShapeError("duplicate critical point '" + points[a].id + "'");
    }
    for (const Instanton& g : instantons)
    {
        const CriticalPoint& x = points[point_index(g.from)];
        const CriticalPoint& y = points[point_index(g.to)];
        if (y.index != x.index - 1)
            throw ShapeError("instanton '" + g.from + "' -> '" + g.to +
                             "' violates the Morse index relation");
        if (g.sign != 1 && g.sign != -1)
            throw ShapeError("instanton '" + g.from + "' -> '" + g.to + "' has sign other than +-1");
        if (g.holonomy.rows() != rank || g.holonomy.cols() != rank)
            throw ShapeError("instanton '" + g.from + "' -> '" + g.to + "' holonomy is not rank x rank");
        if (!g.holonomy.allFinite())
            throw ShapeError("instanton '" + g.from + "' -> '" + g.to + "' holonomy is not finite");
    }
}

CriticalForms CriticalForms::identity(const MorseSystem& ms)
{
    CriticalForms f;
    for (const CriticalPoint& p : ms.points)
        f.forms[p.id] = CMatrix::Identity(ms.rank, ms.rank);
    return f;
}

ThomSmaleComplex build_thom_smale(const MorseSystem& ms, const CriticalForms& forms, const Tolerances& tol)
{
    ms.validate();
    const int r = ms.rank;
    const std::size_t degrees = static_cast<std::size_t>(ms.max_index()) + 1;

    ThomSmaleComplex out;
    out.points_by_degree.resize(degrees);
    std::vector<Eigen::Index> slot(ms.points.size());
    for (std::size_t k = 0; k < ms.points.size(); ++k)
    {
        auto& bucket = out.points_by_degree[static_cast<std::size_t>(ms.points[k].index)];
        slot[k] = static_cast<Eigen::Index>(bucket.size());
        bucket.push_back(k);
    }

    GradedComplex& c = out.complex;
    for (std::size_t i = 0; i < degrees; ++i)
        c.dims.push_back(static_cast<Eigen::Index>(out.points_by_degree[i].size()) * r);
    for (std::size_t i = 0; i + 1 < degrees; ++i)
        c.differentials.push_back(CMatrix::Zero(c.dims[i + 1], c.dims[i]));

    for (const Instanton& g : ms.instantons)
    {
        const std::size_t x = ms.point_index(g.from);
        const std::size_t y = ms.point_index(g.to);
        const std::size_t i = static_cast<std::size_t>(ms.points[y].index);
        c.differentials[i].block(slot[x] * r, slot[y] * r, r, r) += static_cast<double>(g.sign) * g.holonomy;
    }

    for (std::size_t i = 0; i + 2 < degrees; ++i)
    {
        const CMatrix sq = c.differentials[i + 1] * c.differentials[i];
        const double scale =
            std::max(1.0, max_abs(c.differentials[i + 1]) * max_abs(c.differentials[i]) * c.dims[i + 1]);
        for (std::size_t zi = 0; zi < out.points_by_degree[i + 2].size(); ++zi)
            for (std::size_t xi = 0; xi < out.points_by_degree[i].size(); ++xi)
            {
                const CMatrix block = sq.block(static_cast<Eigen::Index>(zi) * r,
                                               static_cast<Eigen::Index>(xi) * r, r, r);
                if (max_abs(block) > tol.complex_square * scale)
                    throw InconsistentInstantonError(ms.points[out.points_by_degree[i + 2][zi]].id,
                                                     ms.points[out.points_by_degree[i][xi]].id);
            }
    }

    for (std::size_t i = 0; i < degrees; ++i)
    {
        CMatrix g = CMatrix::Zero(c.dims[i], c.dims[i]);
        for (std::size_t k = 0; k < out.points_by_degree[i].size(); ++k)
        {
            const CriticalPoint& p = ms.points[out.points_by_degree[i][k]];
            auto it = forms.forms.find(p.id);
            if (it == forms.forms.end())
                throw ShapeError("no bilinear form given at critical point '" + p.id + "'");
            if (it->second.rows() != r || it->second.cols() != r)
                throw ShapeError("form at critical point '" + p.id + "' is not rank x rank");
            g.block(static_cast<Eigen::Index>(k) * r, static_cast<Eigen::Index>(k) * r, r, r) = it->second;
        }
        out.forms.grams.push_back(std::move(g));
    }
    c.validate(tol);
    out.forms.validate(c, tol);
    return out;
}

cplx milnor_torsion(const MorseSystem& ms, const CriticalForms& forms,
                    const std::optional<CohomologyData>& h, const Tolerances& tol)
{
    const ThomSmaleComplex ts = build_thom_smale(ms, forms, tol);
    const CohomologyData reps = h ? *h : cohomology(ts.complex, tol);
    return torsion_form(ts.complex, ts.forms, reps, tol);
}

cplx milnor_anomaly_check(const MorseSystem& ms, const CriticalForms& forms, const CriticalForms& forms1)
{
    ms.validate();
    cplx ratio = 1.0;
    for (const CriticalPoint& p : ms.points)
    {
        auto a = forms.forms.find(p.id);
        auto b = forms1.forms.find(p.id);
        if (a == forms.forms.end() || b == forms1.forms.end())
            throw ShapeError("no bilinear form given at critical point '" + p.id + "'");
        const cplx det = lu_det(solve(a->second, b->second));
        ratio *= (p.index % 2 == 0) ? det : 1.0 / det;
    }
    return ratio;
}

MorseSystem circle_morse_system(const CircleGeometry& geometry, const std::vector<int>& indices,
                                const CMatrix& holonomy)
{
    const std::size_t n = geometry.positions.size();
    if (n < 2 || n % 2 != 0 || indices.size() != n)
        throw ShapeError("circle Morse system needs an even number (>= 2) of critical points");
    if (holonomy.rows() != holonomy.cols() || holonomy.rows() < 1)
        throw ShapeError("circle holonomy must be a square matrix");
    const double len = geometry.circumference;
    for (std::size_t k = 0; k < n; ++k)
    {
        const double x = geometry.positions[k];
        if (!(x > 0.0 && x < len))
            throw ShapeError("critical point position must lie strictly inside (0, L)");
        if (k > 0 && !(x > geometry.positions[k - 1]))
            throw ShapeError("critical point positions must be strictly increasing");
        if (indices[k] != 0 && indices[k] != 1)
            throw ShapeError("circle critical points have index 0 or 1");
        if (indices[k] == indices[(k + 1) % n])
            throw ShapeError("circle critical points must alternate minima and maxima");
    }
    const Eigen::Index r = holonomy.rows();
    const CMatrix id = CMatrix::Identity(r, r);
    const CMatrix inverse = solve(holonomy, id);

    MorseSystem ms;
    ms.rank = static_cast<int>(r);
    ms.circle = geometry;
    for (std::size_t k = 0; k < n; ++k)
        ms.points.push_back({"p" + std::to_string(k), indices[k]});
    for (std::size_t k = 0; k < n; ++k)
    {
        if (indices[k] != 1)
            continue;
        const std::size_t left = (k + n - 1) % n;
        const std::size_t right = (k + 1) % n;
        ms.instantons.push_back({ms.points[k].id, ms.points[left].id, +1, k == 0 ? inverse : id});
        ms.instantons.push_back({ms.points[k].id, ms.points[right].id, -1, k == n - 1 ? holonomy : id});
    }
    return ms;
}

MorseSystem make_circle_morse(int pair_count, const CMatrix& holonomy, int seam_placement, double circumference)
{
    if (pair_count < 1)
        throw ShapeError("make_circle_morse: pair count must be at least 1");
    if (!(circumference > 0.0))
        throw ShapeError("make_circle_morse: circumference must be positive");
    const int n = 2 * pair_count;
    const int shift = ((seam_placement % n) + n) % n;

    // Lay the points out by slot, then relabel so that point j keeps its parity.
    CircleGeometry geometry{circumference, {}};
    std::vector<int> indices;
    for (int s = 0; s < n; ++s)
    {
        const int j = (s + shift) % n;
        geometry.positions.push_back((s + 0.5) * circumference / n);
        indices.push_back(j % 2 == 0 ? 0 : 1);
    }
    MorseSystem ms = circle_morse_system(geometry, indices, holonomy);
    std::map<std::string, std::string> rename;
    for (int s = 0; s < n; ++s)
        rename["p" + std::to_string(s)] = "p" + std::to_string((s + shift) % n);
    for (CriticalPoint& p : ms.points)
        p.id = rename[p.id];
    for (Instanton& g : ms.instantons)
    {
        g.from = rename[g.from];
        g.to = rename[g.to];
    }
    return ms;
}

MorseSystem make_circle_morse(int pair_count, cplx holonomy, int seam_placement, double circumference)
{
    if (holonomy == cplx(0.0))
        throw ShapeError("make_circle_morse: holonomy must be nonzero");
    return make_circle_morse(pair_count, CMatrix::Constant(1, 1, holonomy), seam_placement, circumference);
}

} // namespace bltorsion
