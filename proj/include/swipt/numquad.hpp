#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace swipt {

/// How an infinite range is brought to something the adaptive rule can handle.
enum class Transform {
    SemiInfiniteMap,    ///< t = scale*u/(1-u), u in (0,1)
    DoublyInfiniteMap,  ///< fold tau -> (g(tau) + g(-tau)) on [0, inf), then grow the truncation
    None,               ///< integrate the raw range, growing the truncation bound
};

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-300;
    int max_refinements = 2000;  ///< cap on bisections per adaptive pass
    Transform transform = Transform::SemiInfiniteMap;
    /// Characteristic width of the integrand. Seeds the map scale on (0, inf)
    /// and the initial truncation bound of growing-truncation passes.
    double scale = 1.0;
};

/// Throws ValidationError unless rel_tol > 0, abs_tol >= 0, max_refinements >= 1, scale > 0.
void validate(const QuadratureSettings& s);

template <class T>
struct QuadratureResult {
    T value{};
    double err_estimate = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. Never samples the endpoints.
QuadratureResult<double> integrate_finite(const RealIntegrand& f, double a, double b,
                                          const QuadratureSettings& s = {});
QuadratureResult<std::complex<double>> integrate_finite_complex(const ComplexIntegrand& f, double a,
                                                                double b,
                                                                const QuadratureSettings& s = {});

/// Integral of f over (0, inf). Honors `s.transform`: SemiInfiniteMap (default)
/// or None (growing truncation). DoublyInfiniteMap is rejected.
QuadratureResult<double> integrate_semi_infinite(const RealIntegrand& f,
                                                 const QuadratureSettings& s = {});
QuadratureResult<std::complex<double>> integrate_semi_infinite_complex(const ComplexIntegrand& f,
                                                                       const QuadratureSettings& s = {});

/// Settings preset for integrate_contour.
constexpr QuadratureSettings contour_defaults() {
    QuadratureSettings s;
    s.transform = Transform::DoublyInfiniteMap;
    return s;
}

/// Integral of g(tau) over the whole real line; used for Mellin-Barnes line
/// integrals where tau parametrises s = c + i*tau.
///
/// The truncation bound T starts at 8*scale and doubles until the last added
/// tail segment is below tolerance. A tail that stops shrinking marks the
/// result non-converged. err_estimate = max(interior error, tail estimate).
/// `s.transform` may be DoublyInfiniteMap (default for this call, folds the
/// line onto [0, inf)) or None (symmetric growth of [-T, T]).
QuadratureResult<std::complex<double>> integrate_contour(const ComplexIntegrand& g,
                                                         QuadratureSettings s = contour_defaults());

}  // namespace swipt
