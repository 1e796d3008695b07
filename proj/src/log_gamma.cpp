#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "swipt/specfun.hpp"

namespace swipt {

namespace {

using C = std::complex<double>;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,     1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};

constexpr double kShiftRadius = 10.0;

C log_sin_pi(C z) {
    const double y = z.imag();
    const C i(0, 1);
    if (y > 5) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
        return std::log(0.5 * i) - i * std::numbers::pi * z + std::log(1.0 - std::exp(2.0 * std::numbers::pi * i * z));
    }
    if (y < -5) {
        return std::log(-0.5 * i) + i * std::numbers::pi * z + std::log(1.0 - std::exp(-2.0 * std::numbers::pi * i * z));
    }
    // reduce the real part to [-1/2, 1/2] so sin keeps its relative accuracy near the zeros
    const double k = std::round(z.real());
    const C r(z.real() - k, y);
    C lg = std::log(std::sin(std::numbers::pi * r));
    if (std::fmod(std::abs(k), 2.0) == 1.0) lg += C(0, std::numbers::pi);
    return lg;
}

C stirling(C w) {
    const C inv = 1.0 / w;
    const C inv2 = inv * inv;
    C series = 0;
    C power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real())) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    C shift = 0;
    C w = z;
    while (std::abs(w) < kShiftRadius) {
        shift += std::log(w);
        w += 1.0;
    }
    return stirling(w) - shift;
}

}  // namespace swipt
