#ifndef BLTORSION_SPECIAL_FUNCTIONS_HPP
#define BLTORSION_SPECIAL_FUNCTIONS_HPP

#include <complex>

namespace bltorsion
{

/// Log-gamma for complex arguments away from the poles, continued from the
/// positive real axis by the recurrence (so not the principal log of Gamma).
std::complex<double> log_gamma(std::complex<double> z);

/// Hurwitz zeta sum_{k>=0} (q + k)^{-s} with principal powers, continued in s
/// by Euler-Maclaurin summation. Requires s != 1 and q + k != 0.
std::complex<double> hurwitz_zeta(std::complex<double> s, std::complex<double> q);

/// d/ds zeta_H(s, q) at s = 0, equal to log Gamma(q) - log(2 pi) / 2.
std::complex<double> hurwitz_zeta_derivative_at_zero(std::complex<double> q);

} // namespace bltorsion

#endif // BLTORSION_SPECIAL_FUNCTIONS_HPP
