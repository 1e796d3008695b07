#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/specfun.hpp"

namespace swipt {

namespace {

using C = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kImagResidueLimit = 1e-10;

std::string describe(const MeijerGSpec& s) {
    std::ostringstream os;
    os << "G^{" << s.m << "," << s.n << "}_{" << s.p << "," << s.q << "}";
    return os.str();
}

void check_spec(const MeijerGSpec& s) {
    if (static_cast<int>(s.a.size()) != s.p || static_cast<int>(s.b.size()) != s.q) {
        throw UnsupportedError(describe(s) + ": parameter vector sizes do not match p, q");
    }
    if (!is_supported(s)) throw UnsupportedError(describe(s) + ": order class not supported");
}

// Log of the Mellin-Barnes kernel without the x^s factor.
C log_kernel(const MeijerGSpec& s, C z) {
    C acc = 0;
    for (int j = 0; j < s.m; ++j) acc += log_gamma(s.b[j] - z);
    for (int j = 0; j < s.n; ++j) acc += log_gamma(1.0 - s.a[j] + z);
    for (int j = s.m; j < s.q; ++j) acc -= log_gamma(1.0 - s.b[j] + z);
    for (int j = s.n; j < s.p; ++j) acc -= log_gamma(s.a[j] - z);
    return acc;
}

// Real-axis log-magnitude of the integrand, including |x|^c.
double log_magnitude(const MeijerGSpec& s, double c, double log_abs_x) {
    double acc = c * log_abs_x;
    for (int j = 0; j < s.m; ++j) acc += std::lgamma(s.b[j] - c);
    for (int j = 0; j < s.n; ++j) acc += std::lgamma(1.0 - s.a[j] + c);
    for (int j = s.m; j < s.q; ++j) acc -= std::lgamma(1.0 - s.b[j] + c);
    for (int j = s.n; j < s.p; ++j) acc -= std::lgamma(s.a[j] - c);
    return acc;
}

// Golden-section minimisation of a convex function on the open interval (lo, hi).
template <class F>
double minimise(const F& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

double saddle(const MeijerGSpec& s, double lo, double hi, double log_abs_x) {
    auto phi = [&](double c) {
        const double v = log_magnitude(s, c, log_abs_x);
        return std::isnan(v) ? kInf : v;
    };
    double left = lo, right = hi;
    if (!std::isfinite(lo)) {
        double x = hi - 0.5, step = 1.0;
        while (phi(x - step) < phi(x) && step < 1e15) {
            x -= step;
            step *= 2;
        }
        left = x - step;
    }
    if (!std::isfinite(hi)) {
        double x = (std::isfinite(lo) ? lo : left) + 0.5, step = 1.0;
        while (phi(x + step) < phi(x) && step < 1e15) {
            x += step;
            step *= 2;
        }
        right = x + step;
    }
    return minimise(phi, left, right);
}

// Half-width of the Gaussian core of the integrand along the vertical line.
double core_width(const MeijerGSpec& s, const PoleLayout& layout, double log_abs_x) {
    const double c = layout.contour_abscissa;
    const double dist = std::min(layout.upper_bound - c, c - layout.lower_bound);
    const double h = 1e-3 * std::min(1.0, dist);
    const double d2 = (log_magnitude(s, c + h, log_abs_x) - 2 * log_magnitude(s, c, log_abs_x) +
                       log_magnitude(s, c - h, log_abs_x)) /
                      (h * h);
    const double w = (d2 > 0 && std::isfinite(d2)) ? 1.0 / std::sqrt(d2) : 1.0;
    return std::clamp(w, 1e-3, 1e4);
}

struct Evaluation {
    C mantissa;
    double log_scale;
    double rel_err;
};

[[noreturn]] void fail(const MeijerGSpec& s, const char* what, const C& best, double err) {
    throw ConvergenceError(describe(s) + ": " + what, best.real(), err);
}

Evaluation line_integral(const MeijerGSpec& s, const PoleLayout& layout, C log_x, const MeijerGOptions& opts) {
    const double c = layout.contour_abscissa;
    const double ref = log_magnitude(s, c, log_x.real());
    auto integrand = [&](double tau) {
        const C z(c, tau);
        return std::exp(log_kernel(s, z) + z * log_x - ref);
    };
    QuadratureSettings q = opts.quad;
    q.scale = core_width(s, layout, log_x.real());
    if (q.transform == Transform::SemiInfiniteMap) q.transform = Transform::DoublyInfiniteMap;
    const auto r = integrate_contour(integrand, q);
    const C value = r.value / (2.0 * std::numbers::pi);
    const double rel = r.err_estimate / std::max(std::abs(r.value), std::numeric_limits<double>::min());
    if (!r.converged) fail(s, "contour integral did not converge", value, rel);
    return {value, ref, rel};
}

// Loop around the poles on the side where the kernel decays factorially.
// Only needed for negative arguments of classes whose line integral diverges there.
Evaluation loop_integral(const MeijerGSpec& s, const PoleLayout& layout, C log_x, const MeijerGOptions& opts) {
    if (s.p == s.q) throw UnsupportedError(describe(s) + ": loop contour needs p != q");
    const double c = layout.contour_abscissa;
    const double ref = log_magnitude(s, c, log_x.real());
    const double width = core_width(s, layout, log_x.real());
    const double h = std::max(1.0, width);
    const double dir = (s.p < s.q) ? 1.0 : -1.0;  // rays run to +inf for p < q
    auto kernel = [&](C z) { return std::exp(log_kernel(s, z) + z * log_x - ref); };

    QuadratureSettings q = opts.quad;
    q.transform = Transform::SemiInfiniteMap;
    auto vertical = integrate_finite_complex([&](double tau) { return kernel(C(c, tau)); }, -h, h, q);
    const C i(0, 1);
    auto rays = [&](double u) {
        const C top = kernel(C(c + dir * u, h));
        const C bottom = kernel(C(c + dir * u, -h));
        return dir * (top - bottom) / i;
    };
    q.scale = 1.0 + std::pow(std::exp(std::abs(log_x.real())), 1.0 / std::max(1, std::max(s.m, s.n)));
    auto horizontal = integrate_semi_infinite_complex(rays, q);

    const C total = (vertical.value + horizontal.value) / (2.0 * std::numbers::pi);
    const double err = vertical.err_estimate + horizontal.err_estimate;
    const double rel = err / std::max(std::abs(total) * 2.0 * std::numbers::pi, std::numeric_limits<double>::min());
    if (!vertical.converged || !horizontal.converged) fail(s, "loop contour did not converge", total, rel);
    return {total, ref, rel};
}

}  // namespace

MeijerGSpec MeijerGSpec::make(int m, int n, std::vector<double> a, std::vector<double> b) {
    MeijerGSpec s;
    s.m = m;
    s.n = n;
    s.p = static_cast<int>(a.size());
    s.q = static_cast<int>(b.size());
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
}

bool is_supported(const MeijerGSpec& s) noexcept {
    struct Order {
        int m, n, p, q;
    };
    constexpr Order kSupported[] = {{3, 0, 0, 3}, {3, 1, 1, 3}, {1, 0, 0, 1}, {2, 0, 0, 2}, {0, 1, 1, 0}};
    return std::any_of(std::begin(kSupported), std::end(kSupported), [&](const Order& o) {
        return o.m == s.m && o.n == s.n && o.p == s.p && o.q == s.q;
    });
}

PoleLayout pole_layout(const MeijerGSpec& spec, double abs_x, std::optional<double> abscissa) {
    check_spec(spec);
    PoleLayout layout;
    layout.upper_bound = kInf;
    layout.lower_bound = -kInf;
    for (int j = 0; j < spec.m; ++j) {
        layout.upper_bound = std::min(layout.upper_bound, spec.b[j]);
        for (int k = 0; k < 3; ++k) layout.right_poles.push_back(spec.b[j] + k);
    }
    for (int j = 0; j < spec.n; ++j) {
        layout.lower_bound = std::max(layout.lower_bound, spec.a[j] - 1.0);
        for (int k = 0; k < 3; ++k) layout.left_poles.push_back(spec.a[j] - 1.0 - k);
    }
    std::sort(layout.right_poles.begin(), layout.right_poles.end());
    std::sort(layout.left_poles.begin(), layout.left_poles.end());
    if (!(layout.lower_bound < layout.upper_bound)) {
        throw UnsupportedError(describe(spec) + ": no vertical line separates the Gamma poles");
    }

    const double c = abscissa ? *abscissa : saddle(spec, layout.lower_bound, layout.upper_bound, std::log(abs_x));
    const bool separated =
        std::all_of(layout.right_poles.begin(), layout.right_poles.end(), [&](double p) { return p > c; }) &&
        std::all_of(layout.left_poles.begin(), layout.left_poles.end(), [&](double p) { return p < c; });
    if (!separated || !std::isfinite(c)) {
        std::ostringstream os;
        os << describe(spec) << ": abscissa " << c << " outside the legal strip (" << layout.lower_bound << ", "
           << layout.upper_bound << ")";
        throw UnsupportedError(os.str());
    }
    layout.contour_abscissa = c;
    return layout;
}

double ScaledValue::value() const { return mantissa * std::exp(log_scale); }

double ScaledValue::log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }

ScaledValue meijer_g_scaled(const MeijerGSpec& spec, double x, const MeijerGOptions& opts) {
    if (!(x > 0) || !std::isfinite(x)) throw ValidationError("x", "Meijer-G argument must be finite and > 0");
    const auto layout = pole_layout(spec, x, opts.abscissa);
    const auto e = line_integral(spec, layout, C(std::log(x), 0.0), opts);
    if (std::abs(e.mantissa.imag()) > kImagResidueLimit * std::abs(e.mantissa.real())) {
        fail(spec, "imaginary residue above 1e-10 of the value", e.mantissa, e.rel_err);
    }
    return {e.mantissa.real(), e.log_scale, e.rel_err};
}

double meijer_g(const MeijerGSpec& spec, double x, const MeijerGOptions& opts) {
    return meijer_g_scaled(spec, x, opts).value();
}

std::complex<double> meijer_g_signed(const MeijerGSpec& spec, double x, Branch branch, ContourShape shape,
                                     const MeijerGOptions& opts) {
    if (x == 0 || !std::isfinite(x)) throw ValidationError("x", "Meijer-G argument must be finite and non-zero");
    if (x > 0) return meijer_g(spec, x, opts);

    const auto layout = pole_layout(spec, -x, opts.abscissa);
    const double sign = branch == Branch::Upper ? 1.0 : -1.0;
    const C log_x(std::log(-x), sign * std::numbers::pi);
    const double delta = spec.m + spec.n - 0.5 * (spec.p + spec.q);
    if (shape == ContourShape::Automatic) shape = delta > 1 ? ContourShape::Line : ContourShape::Loop;
    if (shape == ContourShape::Line && delta <= 1) {
        throw UnsupportedError(describe(spec) + ": line contour diverges at |arg x| = pi");
    }
    const auto e = shape == ContourShape::Line ? line_integral(spec, layout, log_x, opts)
                                               : loop_integral(spec, layout, log_x, opts);
    return e.mantissa * std::exp(e.log_scale);
}

}  // namespace swipt
