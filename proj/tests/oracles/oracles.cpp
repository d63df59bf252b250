#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace oracle
{

cplx leibniz_det(const CMatrix& m)
{
    const auto n = static_cast<int>(m.rows());
    if (n != m.cols() || n > 8)
        throw std::invalid_argument("leibniz_det: square matrices up to 8x8 only");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do
    {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
        cplx term = inversions % 2 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i)
            term *= m(i, perm[static_cast<std::size_t>(i)]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

cplx cofactor_det(const CMatrix& m)
{
    const auto n = static_cast<int>(m.rows());
    if (n != m.cols() || n > 20)
        throw std::invalid_argument("cofactor_det: square matrices up to 20x20 only");
    if (n == 0)
        return 1.0;
    // memo[mask] = det of the rows popcount(mask).. restricted to the columns not in mask
    std::vector<cplx> memo(std::size_t{1} << n);
    std::vector<char> known(memo.size(), 0);
    const std::size_t full = memo.size() - 1;
    memo[full] = 1.0;
    known[full] = 1;
    auto rec = [&](auto&& self, std::size_t used) -> cplx {
        if (known[used])
            return memo[used];
        const int row = std::popcount(used);
        cplx acc = 0.0;
        int free_before = 0;
        for (int col = 0; col < n; ++col)
        {
            if (used >> col & 1)
                continue;
            const cplx a = m(row, col);
            if (a != cplx(0.0))
                acc += (free_before % 2 ? -a : a) * self(self, used | (std::size_t{1} << col));
            ++free_before;
        }
        known[used] = 1;
        return memo[used] = acc;
    };
    return rec(rec, 0);
}

std::vector<cplx> charpoly(const CMatrix& m)
{
    const Eigen::Index n = m.rows();
    std::vector<cplx> c(static_cast<std::size_t>(n + 1));
    c[static_cast<std::size_t>(n)] = 1.0;
    CMatrix mk = CMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k)
    {
        mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * CMatrix::Identity(n, n);
        c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
    }
    return c;
}

cplx random_cplx(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    return {re, u(rng)};
}

CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = random_cplx(rng);
    return m;
}

CMatrix random_symmetric(std::mt19937_64& rng, Eigen::Index n)
{
    const CMatrix a = random_matrix(rng, n, n);
    return 0.25 * (a + a.transpose()) + 1.5 * CMatrix::Identity(n, n);
}

CMatrix random_invertible(std::mt19937_64& rng, Eigen::Index n)
{
    return 0.35 * random_matrix(rng, n, n) + CMatrix::Identity(n, n);
}

RandomComplex random_complex(std::mt19937_64& rng, const std::vector<Eigen::Index>& dims,
                             const std::vector<Eigen::Index>& ranks)
{
    const std::size_t degrees = dims.size();
    if (ranks.size() + 1 != degrees)
        throw std::invalid_argument("random_complex: need one rank per differential");
    std::vector<CMatrix> bases(degrees);
    for (std::size_t i = 0; i < degrees; ++i)
        bases[i] = random_invertible(rng, dims[i]);
    RandomComplex out;
    out.complex.dims = dims;
    for (std::size_t i = 0; i + 1 < degrees; ++i)
    {
        const Eigen::Index before = i == 0 ? 0 : ranks[i - 1];
        const Eigen::Index r = ranks[i];
        CMatrix standard = CMatrix::Zero(dims[i + 1], dims[i]);
        standard.block(0, dims[i] - r, r, r) = random_invertible(rng, r);
        if (dims[i] - before - r < 0)
            throw std::invalid_argument("random_complex: ranks exceed dims");
        out.complex.differentials.push_back(bases[i + 1] * standard * bases[i].inverse());
    }
    for (std::size_t i = 0; i < degrees; ++i)
    {
        const Eigen::Index before = i == 0 ? 0 : ranks[i - 1];
        const Eigen::Index after = i + 1 < degrees ? ranks[i] : 0;
        out.cohomology.bases.push_back(bases[i].middleCols(before, dims[i] - before - after));
        out.forms.grams.push_back(random_symmetric(rng, dims[i]));
    }
    return out;
}

namespace
{

void extend_ranks(const std::vector<Eigen::Index>& dims, std::vector<Eigen::Index>& ranks,
                  std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>>& out)
{
    const std::size_t i = ranks.size();
    if (i + 1 == dims.size())
    {
        out.emplace_back(dims, ranks);
        return;
    }
    const Eigen::Index before = i == 0 ? 0 : ranks[i - 1];
    const Eigen::Index top = std::min(dims[i] - before, dims[i + 1]);
    for (Eigen::Index r = 0; r <= top; ++r)
    {
        ranks.push_back(r);
        extend_ranks(dims, ranks, out);
        ranks.pop_back();
    }
}

void extend_dims(Eigen::Index budget, std::size_t max_degrees, std::vector<Eigen::Index>& dims,
                 std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>>& out)
{
    if (!dims.empty() && dims.front() > 0 && dims.back() > 0)
    {
        std::vector<Eigen::Index> ranks;
        extend_ranks(dims, ranks, out);
    }
    if (dims.size() == max_degrees)
        return;
    for (Eigen::Index d = dims.empty() ? 1 : 0; d <= budget; ++d)
    {
        dims.push_back(d);
        extend_dims(budget - d, max_degrees, dims, out);
        dims.pop_back();
    }
}

} // namespace

std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>>
all_patterns(Eigen::Index max_total, std::size_t max_degrees)
{
    std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>> out;
    std::vector<Eigen::Index> dims;
    extend_dims(max_total, max_degrees, dims, out);
    return out;
}

RandomComplex random_complex(std::mt19937_64& rng, Eigen::Index max_total)
{
    std::uniform_int_distribution<int> degree_count(1, 4);
    for (;;)
    {
        const auto degrees = static_cast<std::size_t>(degree_count(rng));
        std::vector<Eigen::Index> dims(degrees);
        Eigen::Index total = 0;
        for (auto& d : dims)
        {
            d = std::uniform_int_distribution<Eigen::Index>(0, 5)(rng);
            total += d;
        }
        if (total == 0 || total > max_total || dims.front() == 0 || dims.back() == 0)
            continue;
        std::vector<Eigen::Index> ranks;
        for (std::size_t i = 0; i + 1 < degrees; ++i)
        {
            const Eigen::Index before = i == 0 ? 0 : ranks[i - 1];
            const Eigen::Index top = std::min(dims[i] - before, dims[i + 1]);
            ranks.push_back(std::uniform_int_distribution<Eigen::Index>(0, top)(rng));
        }
        return random_complex(rng, dims, ranks);
    }
}

namespace
{

// Columns of a spanning a complement of ker(m): a greedy independent subset
// of the columns of m^*.
CMatrix coimage_basis(const CMatrix& m)
{
    const CMatrix a = m.adjoint();
    const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    std::vector<Eigen::Index> chosen;
    std::vector<CMatrix> ortho;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
    {
        CMatrix v = a.col(j);
        for (const CMatrix& q : ortho)
            v -= q * (q.adjoint() * v)(0, 0);
        const double norm = v.norm();
        if (norm > 1e-8 * std::max(scale, 1e-300))
        {
            chosen.push_back(j);
            ortho.push_back(v / norm);
        }
    }
    CMatrix out(a.rows(), static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t k = 0; k < chosen.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = a.col(chosen[k]);
    return out;
}

} // namespace

cplx wedge_torsion(const bltorsion::GradedComplex& c, const bltorsion::BilinearStructure& b,
                   const bltorsion::CohomologyData& h)
{
    const std::size_t degrees = c.dims.size();
    std::vector<CMatrix> lifts(degrees);
    for (std::size_t i = 0; i < degrees; ++i)
        lifts[i] = i + 1 < degrees ? coimage_basis(c.differentials[i]) : CMatrix(c.dims[i], 0);
    cplx tau = 1.0;
    for (std::size_t i = 0; i < degrees; ++i)
    {
        const Eigen::Index n = c.dims[i];
        const CMatrix image = i == 0 ? CMatrix(n, 0) : CMatrix(c.differentials[i - 1] * lifts[i - 1]);
        if (image.cols() + h.bases[i].cols() + lifts[i].cols() != n)
            throw std::invalid_argument("wedge_torsion: bases do not fill the degree");
        CMatrix v(n, n);
        v << image, h.bases[i], lifts[i];
        const cplx det_v = leibniz_det(v);
        const cplx value = det_v * det_v * leibniz_det(b.grams[i]);
        tau = i % 2 == 0 ? tau * value : tau / value;
    }
    return tau;
}

namespace
{

void trim(IntPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

} // namespace

IntPoly poly_mul(const IntPoly& a, const IntPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

IntPoly poly_div(const IntPoly& a, const IntPoly& b)
{
    IntPoly rem = a;
    IntPoly den = b;
    trim(rem);
    trim(den);
    if (den.empty() || (den.back() != 1 && den.back() != -1))
        throw std::invalid_argument("poly_div: divisor must have unit leading coefficient");
    if (rem.size() < den.size())
    {
        if (!rem.empty())
            throw std::invalid_argument("poly_div: nonzero remainder");
        return {};
    }
    IntPoly q(rem.size() - den.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;)
    {
        const long long coef = rem[k + den.size() - 1] / den.back();
        q[k] = coef;
        for (std::size_t j = 0; j < den.size(); ++j)
            rem[k + j] -= coef * den[j];
    }
    trim(rem);
    if (!rem.empty())
        throw std::invalid_argument("poly_div: nonzero remainder");
    trim(q);
    return q;
}

IntPoly torus_knot_alexander(int p, int q)
{
    auto power_minus_one = [](int k) {
        IntPoly out(static_cast<std::size_t>(k) + 1, 0);
        out[0] = -1;
        out[static_cast<std::size_t>(k)] = 1;
        return out;
    };
    const IntPoly num = poly_mul(power_minus_one(p * q), power_minus_one(1));
    const IntPoly den = poly_mul(power_minus_one(p), power_minus_one(q));
    return normalize(poly_div(num, den));
}

IntPoly normalize(IntPoly p)
{
    trim(p);
    if (p.empty())
        return p;
    std::size_t first = 0;
    while (p[first] == 0)
        ++first;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(first));
    long long g = 0;
    for (long long c : p)
        g = std::gcd(g, c < 0 ? -c : c);
    if (p.back() < 0)
        g = -g;
    for (long long& c : p)
        c /= g;
    return p;
}

const std::vector<HandFox>& hand_fox_table()
{
    // Entries follow d(r)/d(x) = sum over letters: +t^e before a generator
    // letter, -t^(e-1) before an inverse letter, e the exponent sum so far.
    static const std::vector<HandFox> table{
        {"unknot", {"x", "y"}, {"x Y"}, {{{0, {1}}}}, {1}},
        {"trefoil", {"x", "y"}, {"x y x Y X Y"}, {{{0, {1, -1, 1}}}}, {1, -1, 1}},
        {"figure_eight", {"x", "y"}, {"X y x Y x y X Y x Y"}, {{{-1, {-1, 3, -1}}}}, {1, -3, 1}},
        {"trefoil_wirtinger",
         {"a", "b", "c"},
         {"a b A C", "b c B A"},
         {{{0, {1, -1}}, {1, {1}}}, {{0, {-1}}, {0, {1, -1}}}},
         {1, -1, 1}},
    };
    return table;
}

} // namespace oracle
