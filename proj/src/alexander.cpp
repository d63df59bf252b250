#include "bltorsion/alexander.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

LaurentPolynomial::LaurentPolynomial(long long constant)
{
    if (constant != 0)
        coeffs_ = {constant};
}

LaurentPolynomial LaurentPolynomial::monomial(long long coeff, int exponent)
{
    LaurentPolynomial p(coeff);
    if (!p.is_zero())
        p.low_ = exponent;
    return p;
}

long long LaurentPolynomial::coeff(int exponent) const
{
    if (coeffs_.empty() || exponent < low_ || exponent > high())
        return 0;
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

void LaurentPolynomial::trim()
{
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0)
        ++first;
    if (first == coeffs_.size())
    {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0)
        --last;
    coeffs_ = std::vector<long long>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                     coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
    low_ += static_cast<int>(first);
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const
{
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    LaurentPolynomial r;
    r.low_ = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    r.coeffs_.assign(static_cast<std::size_t>(hi - r.low_ + 1), 0);
    for (int e = r.low_; e <= hi; ++e)
        r.coeffs_[static_cast<std::size_t>(e - r.low_)] = coeff(e) + o.coeff(e);
    r.trim();
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-() const
{
    LaurentPolynomial r = *this;
    for (long long& c : r.coeffs_)
        c = -c;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const
{
    return *this + (-o);
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const
{
    if (is_zero() || o.is_zero())
        return {};
    LaurentPolynomial r;
    r.low_ = low_ + o.low_;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    r.trim();
    return r;
}

std::complex<double> LaurentPolynomial::evaluate(std::complex<double> t) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + static_cast<double>(*it);
    return acc * std::pow(t, low_);
}

LaurentPolynomial LaurentPolynomial::normalized() const
{
    if (is_zero())
        return {};
    LaurentPolynomial r = *this;
    long long g = 0;
    for (long long c : r.coeffs_)
        g = std::gcd(g, c);
    if (r.coeffs_.back() < 0)
        g = -g;
    for (long long& c : r.coeffs_)
        c /= g;
    r.low_ = 0;
    return r;
}

LaurentPolynomial LaurentPolynomial::reversed() const
{
    LaurentPolynomial r;
    r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    r.low_ = -high();
    r.trim();
    return r.normalized();
}

std::string LaurentPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int e = high(); e >= low_; --e)
    {
        const long long c = coeff(e);
        if (c == 0)
            continue;
        const long long mag = c < 0 ? -c : c;
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        if (e == 0)
        {
            out << mag;
            continue;
        }
        if (mag != 1)
            out << mag;
        out << "t";
        if (e != 1)
            out << "^" << e;
    }
    return out.str();
}

void KnotPresentation::validate() const
{
    if (generators.empty())
        throw ShapeError("knot presentation needs at least one generator");
    if (relators.size() + 1 != generators.size())
        throw ShapeError("knot presentation must have deficiency one (" + std::to_string(generators.size()) +
                         " generators, " + std::to_string(relators.size()) + " relators)");
    for (std::size_t r = 0; r < relators.size(); ++r)
    {
        for (const Letter& l : relators[r])
            if (l.generator < 0 || l.generator >= static_cast<int>(generators.size()) ||
                (l.exponent != 1 && l.exponent != -1))
                throw ShapeError("relator " + std::to_string(r) + " has an invalid letter");
        if (exponent_sum(relators[r]) != 0)
            throw ShapeError("relator " + std::to_string(r) +
                             " has nonzero exponent sum; it is not a relation between meridians");
    }
}

KnotPresentation KnotPresentation::from_strings(const std::vector<std::string>& generators,
                                                const std::vector<std::string>& relators)
{
    KnotPresentation p;
    p.generators = generators;
    for (const std::string& r : relators)
        p.relators.push_back(parse_word(r, generators));
    p.validate();
    return p;
}

KnotPresentation braid_presentation(int strands, const std::vector<int>& braid)
{
    if (strands < 2)
        throw ShapeError("braid needs at least two strands");
    const auto n = static_cast<std::size_t>(strands);
    std::vector<Word> image(n);
    for (std::size_t j = 0; j < n; ++j)
        image[j] = {Letter{static_cast<int>(j), 1}};

    // Right action: apply the generators in order to the current images.
    for (int s : braid)
    {
        const int i = std::abs(s) - 1;
        if (s == 0 || i + 1 >= strands)
            throw ShapeError("braid letter " + std::to_string(s) + " out of range for " +
                             std::to_string(strands) + " strands");
        const auto a = static_cast<std::size_t>(i);
        const Word xi = image[a];
        const Word xj = image[a + 1];
        Word next_i;
        Word next_j;
        if (s > 0)
        {
            next_i = xi;
            next_i.insert(next_i.end(), xj.begin(), xj.end());
            const Word inv = inverse(xi);
            next_i.insert(next_i.end(), inv.begin(), inv.end());
            next_j = xi;
        }
        else
        {
            next_i = xj;
            next_j = inverse(xj);
            next_j.insert(next_j.end(), xi.begin(), xi.end());
            next_j.insert(next_j.end(), xj.begin(), xj.end());
        }
        image[a] = free_reduce(next_i);
        image[a + 1] = free_reduce(next_j);
    }

    KnotPresentation p;
    for (int j = 0; j < strands; ++j)
        p.generators.push_back("x" + std::to_string(j + 1));
    for (std::size_t j = 0; j + 1 < n; ++j)
    {
        Word r{Letter{static_cast<int>(j), 1}};
        const Word inv = inverse(image[j]);
        r.insert(r.end(), inv.begin(), inv.end());
        p.relators.push_back(free_reduce(r));
    }
    p.validate();
    return p;
}

LaurentPolynomial fox_derivative(const Word& w, int generator)
{
    LaurentPolynomial d;
    int prefix = 0;
    for (const Letter& l : w)
    {
        if (l.generator == generator)
        {
            if (l.exponent > 0)
                d = d + LaurentPolynomial::monomial(1, prefix);
            else
                d = d - LaurentPolynomial::monomial(1, prefix - 1);
        }
        prefix += l.exponent;
    }
    return d;
}

namespace
{

using Matrix = std::vector<std::vector<LaurentPolynomial>>;

LaurentPolynomial laplace(const Matrix& m, std::size_t row, std::uint64_t used,
                          std::unordered_map<std::uint64_t, LaurentPolynomial>& memo)
{
    if (row == m.size())
        return LaurentPolynomial(1);
    if (auto it = memo.find(used); it != memo.end())
        return it->second;
    LaurentPolynomial acc;
    int sign = 1;
    for (std::size_t c = 0; c < m.size(); ++c)
    {
        if (used & (std::uint64_t{1} << c))
            continue;
        if (!m[row][c].is_zero())
        {
            const LaurentPolynomial minor = laplace(m, row + 1, used | (std::uint64_t{1} << c), memo);
            acc = sign > 0 ? acc + m[row][c] * minor : acc - m[row][c] * minor;
        }
        sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
}

} // namespace

LaurentPolynomial fox_alexander(const KnotPresentation& p)
{
    p.validate();
    const std::size_t k = p.relators.size();
    if (k == 0)
        return LaurentPolynomial(1);
    if (k > 24)
        throw UnsupportedError("fox_alexander: presentations with more than 25 generators are not supported");
    Matrix m(k, std::vector<LaurentPolynomial>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
            m[r][c] = fox_derivative(p.relators[r], static_cast<int>(c));
    std::unordered_map<std::uint64_t, LaurentPolynomial> memo;
    const LaurentPolynomial det = laplace(m, 0, 0, memo);
    if (det.is_zero())
        throw NumericalError("fox_alexander: Alexander matrix minor vanishes");
    return det.normalized();
}

} // namespace bltorsion
