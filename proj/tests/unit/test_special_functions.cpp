#include <numbers>

#include "doctest.h"

#include "bltorsion/special_functions.hpp"

using namespace bltorsion;
using std::numbers::pi;

TEST_SUITE("special_functions")
{
    TEST_CASE("log gamma")
    {
        CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) < 1e-14);
        CHECK(std::abs(log_gamma(1.0)) < 1e-14);
        CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-13);
        // Gamma(1 + i) = i Gamma(i), |Gamma(i)|^2 = pi / sinh(pi)
        const std::complex<double> z(0.0, 1.0);
        CHECK(std::abs(std::exp(log_gamma(1.0 + z)) - z * std::exp(log_gamma(z))) < 1e-13);
        CHECK(std::abs(std::norm(std::exp(log_gamma(z))) - pi / std::sinh(pi)) < 1e-13);
    }

    TEST_CASE("Hurwitz zeta")
    {
        CHECK(std::abs(hurwitz_zeta(2.0, 1.0) - pi * pi / 6.0) < 1e-13);
        CHECK(std::abs(hurwitz_zeta(4.0, 1.0) - std::pow(pi, 4) / 90.0) < 1e-13);
        // zeta_H(3, 1/2) = 7 zeta(3)
        CHECK(std::abs(hurwitz_zeta(3.0, 0.5) - 7.0 * 1.2020569031595942) < 1e-12);
        // zeta_H(0, q) = 1/2 - q and zeta_H(-1, q) = -B_2(q)/2
        const std::complex<double> q(0.3, 0.8);
        CHECK(std::abs(hurwitz_zeta(0.0, q) - (0.5 - q)) < 1e-12);
        CHECK(std::abs(hurwitz_zeta(-1.0, q) + 0.5 * (q * q - q + 1.0 / 6.0)) < 1e-12);
        // shift relation
        const std::complex<double> s(2.5, 0.3);
        CHECK(std::abs(hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0) - std::pow(q, -s)) < 1e-12);
    }

    TEST_CASE("derivative at zero")
    {
        CHECK(std::abs(hurwitz_zeta_derivative_at_zero(1.0) + 0.5 * std::log(2 * pi)) < 1e-14);
        const std::complex<double> q(1.7, -0.4);
        const double h = 1e-5;
        const std::complex<double> numeric = (hurwitz_zeta(h, q) - hurwitz_zeta(-h, q)) / (2 * h);
        CHECK(std::abs(hurwitz_zeta_derivative_at_zero(q) - numeric) < 1e-8);
    }
}
