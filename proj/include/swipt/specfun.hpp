#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "swipt/numquad.hpp"

namespace swipt {

/// log Gamma(z) for complex z. The imaginary part is a continuous branch
/// along the Stirling path, so only exp(log_gamma(z)) is branch-independent.
/// Returns +inf real part at the poles z = 0, -1, -2, ...
std::complex<double> log_gamma(std::complex<double> z);

/// Meijer G-function G^{m,n}_{p,q}(x | a; b) with real parameters.
struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;  ///< p upper parameters
    std::vector<double> b;  ///< q lower parameters

    static MeijerGSpec make(int m, int n, std::vector<double> a, std::vector<double> b);
};

/// True for the orders the evaluator is validated on:
/// (3,0,0,3), (3,1,1,3), (1,0,0,1), (2,0,0,2), (0,1,1,0).
bool is_supported(const MeijerGSpec& spec) noexcept;

/// Where the Mellin-Barnes line sits relative to the Gamma poles.
struct PoleLayout {
    double contour_abscissa = 0;
    double lower_bound = 0;           ///< rightmost pole of Gamma(1 - a_j + s), or -inf
    double upper_bound = 0;           ///< leftmost pole of Gamma(b_j - s), or +inf
    std::vector<double> left_poles;   ///< leading poles of Gamma(1 - a_j + s), j <= n
    std::vector<double> right_poles;  ///< leading poles of Gamma(b_j - s), j <= m
};

/// Computes the legal strip and the contour abscissa for argument magnitude
/// `abs_x`. Without `abscissa`, the line goes through the minimum of the
/// integrand magnitude on the real axis (the real saddle), which keeps the
/// integral well conditioned for large and small arguments alike.
///
/// Throws UnsupportedError when no line separates the poles or when the
/// requested abscissa lies outside the strip.
PoleLayout pole_layout(const MeijerGSpec& spec, double abs_x,
                       std::optional<double> abscissa = std::nullopt);

struct MeijerGOptions {
    std::optional<double> abscissa;  ///< override the automatic contour placement
    QuadratureSettings quad = [] {
        QuadratureSettings s = contour_defaults();
        s.rel_tol = 1e-12;
        return s;
    }();
};

/// Value represented as mantissa * exp(log_scale); survives arguments whose
/// G-value under- or overflows a double.
struct ScaledValue {
    double mantissa = 0;
    double log_scale = 0;
    double rel_err = 0;

    double value() const;
    /// log|value|
    double log_abs() const;
};

/// G^{m,n}_{p,q}(x) for x > 0 by Mellin-Barnes line integration.
///
/// Throws ValidationError for x <= 0, UnsupportedError for unsupported orders or
/// pole-separation failure, ConvergenceError when the contour integral does not
/// converge or its imaginary residue exceeds 1e-10 of the value.
double meijer_g(const MeijerGSpec& spec, double x, const MeijerGOptions& opts = {});

/// Same as meijer_g, keeping the exponent separate.
ScaledValue meijer_g_scaled(const MeijerGSpec& spec, double x, const MeijerGOptions& opts = {});

/// Which sheet a negative argument sits on: x = |x| * exp(+i*pi) or exp(-i*pi).
enum class Branch { Upper, Lower };

/// Contour used for negative arguments.
enum class ContourShape {
    Automatic,  ///< Line when it converges at |arg x| = pi, otherwise Loop
    Line,       ///< vertical line c + i*tau
    Loop,       ///< loop around the poles on the side where the integrand decays
};

/// G^{m,n}_{p,q}(x) for real x != 0. Positive x agrees with meijer_g. Negative
/// x is evaluated on the requested branch; the loop contour covers classes
/// whose line integral diverges at |arg x| = pi.
std::complex<double> meijer_g_signed(const MeijerGSpec& spec, double x, Branch branch = Branch::Upper,
                                     ContourShape shape = ContourShape::Automatic,
                                     const MeijerGOptions& opts = {});

}  // namespace swipt
