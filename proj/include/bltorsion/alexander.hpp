#ifndef BLTORSION_ALEXANDER_HPP
#define BLTORSION_ALEXANDER_HPP

#include <complex>
#include <string>
#include <vector>

#include "bltorsion/words.hpp"

namespace bltorsion
{

/// Integer Laurent polynomial sum_k coeffs[k] t^(low + k).
class LaurentPolynomial
{
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(long long constant);
    static LaurentPolynomial monomial(long long coeff, int exponent);

    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    long long coeff(int exponent) const;
    const std::vector<long long>& coefficients() const { return coeffs_; }

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    bool operator==(const LaurentPolynomial& o) const = default;

    std::complex<double> evaluate(std::complex<double> t) const;

    /// Divides by the content, shifts the lowest exponent to 0 and makes the
    /// leading coefficient positive.
    LaurentPolynomial normalized() const;

    /// p(1/t), normalized.
    LaurentPolynomial reversed() const;

    /// "t^2 - t + 1"
    std::string to_string() const;

private:
    void trim();
    int low_ = 0;
    std::vector<long long> coeffs_;
};

/// Deficiency-one presentation of a knot group; every generator abelianizes
/// to t.
struct KnotPresentation
{
    std::vector<std::string> generators;
    std::vector<Word> relators;

    void validate() const;
    static KnotPresentation from_strings(const std::vector<std::string>& generators,
                                         const std::vector<std::string>& relators);
};

/// Presentation of the group of the closure of a braid on `strands` strands.
/// Letters are +-i for sigma_i^{+-1}, 1 <= i < strands.
KnotPresentation braid_presentation(int strands, const std::vector<int>& braid);

/// Fox derivative d(word)/d(generator), abelianized.
LaurentPolynomial fox_derivative(const Word& w, int generator);

/// Alexander polynomial from the Fox matrix with the last column removed.
LaurentPolynomial fox_alexander(const KnotPresentation& p);

} // namespace bltorsion

#endif // BLTORSION_ALEXANDER_HPP
