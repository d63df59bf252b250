#include "bltorsion/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bltorsion/errors.hpp"

namespace bltorsion
{

namespace
{

using cd = std::complex<double>;

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> bernoulli_even{
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

constexpr double shift_target = 20.0;

} // namespace

cd log_gamma(cd z)
{
    if (std::imag(z) == 0.0 && std::real(z) <= 0.0 && std::real(z) == std::floor(std::real(z)))
        throw NumericalError("log_gamma: pole at a non-positive integer");
    cd shift = 0.0;
    while (std::real(z) < shift_target)
    {
        shift += std::log(z);
        z += 1.0;
    }
    const cd inv = 1.0 / z;
    const cd inv2 = inv * inv;
    cd series = 0.0;
    cd power = inv;
    for (std::size_t j = 0; j < 10; ++j)
    {
        const double n = 2.0 * static_cast<double>(j + 1);
        series += bernoulli_even[j] / (n * (n - 1.0)) * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

cd hurwitz_zeta(cd s, cd q)
{
    if (std::abs(s - 1.0) < 1e-14)
        throw NumericalError("hurwitz_zeta: pole at s = 1");
    cd head = 0.0;
    const double target = shift_target + std::abs(s);
    while (std::real(q) < target)
    {
        if (std::abs(q) == 0.0)
            throw NumericalError("hurwitz_zeta: q + k vanishes");
        head += std::exp(-s * std::log(q));
        q += 1.0;
    }
    const cd logq = std::log(q);
    cd tail = std::exp((1.0 - s) * logq) / (s - 1.0) + 0.5 * std::exp(-s * logq);
    // B_{2j}/(2j)! s(s+1)...(s+2j-2) q^{-s-2j+1}
    cd rising = s;
    cd power = std::exp(-(s + 1.0) * logq);
    const cd inv2 = 1.0 / (q * q);
    double factorial = 2.0;
    for (std::size_t j = 0; j < bernoulli_even.size(); ++j)
    {
        const cd term = bernoulli_even[j] / factorial * rising * power;
        tail += term;
        if (std::abs(term) < 1e-17 * std::abs(tail))
            break;
        const double m = 2.0 * static_cast<double>(j + 1);
        rising *= (s + m - 1.0) * (s + m);
        factorial *= (m + 1.0) * (m + 2.0);
        power *= inv2;
    }
    return head + tail;
}

cd hurwitz_zeta_derivative_at_zero(cd q)
{
    return log_gamma(q) - 0.5 * std::log(2.0 * std::numbers::pi);
}

} // namespace bltorsion
