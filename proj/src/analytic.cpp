#include "swipt/analytic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/numquad.hpp"
#include "swipt/specfun.hpp"

namespace swipt {

namespace {

constexpr double kPdfTol = 1e-9;
constexpr double kInnerTol = 1e-11;
constexpr double kOuterTol = 1e-10;
constexpr double kNegativeClamp = -1e-12;

const double kSqrtPi = std::sqrt(std::numbers::pi);

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::toupper(ch); });
    return out;
}

template <class T>
T checked(const QuadratureResult<T>& r, const char* what) {
    if (!r.converged) {
        double best = 0;
        if constexpr (std::is_same_v<T, double>) best = r.value;
        throw ConvergenceError(std::string(what) + ": quadrature did not converge", best, r.err_estimate);
    }
    return r.value;
}

// Maximiser of a unimodal function of t > 0, searched in log t.
template <class F>
double peak_location(const F& exponent, double lo_log = -740.0, double hi_log = 700.0) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo_log, b = hi_log;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = exponent(std::exp(x1)), f2 = exponent(std::exp(x2));
    for (int it = 0; it < 90; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = exponent(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = exponent(std::exp(x2));
        }
    }
    return std::exp(0.5 * (a + b));
}

struct Density {
    double value;
    double err;
};

// Right edge of the bulk of exp(exponent(t) - e_peak): the first t past the
// peak where the integrand falls below e^{-1}. For tiny z the integrand is a
// plateau ending far to the right of its numerical maximum, and this edge is
// the scale the map needs.
template <class F>
double bulk_edge(const F& exponent, double t_peak, double e_peak) {
    double t = t_peak;
    for (int i = 0; i < 4000 && std::isfinite(t) && exponent(t) - e_peak > -1.0; ++i) t *= 1.5;
    return std::min(t, 1e300);
}

// exp(e_peak) * norm * (integral <= ~edge) cannot reach the smallest subnormal
bool underflows(double e_peak, double norm_log, double edge) { return e_peak + norm_log + std::log(4.0 * edge) < -750; }

// Exact two-hop pdf: int_0^inf exp(E(t)) / (k2 z) dt with
// E(t) = -k2 (k3+t) z / (k1 t) - k1 t^2 / (k2^2 (k3+t) z).
Density exact_density(const DerivedConstants& c, double z, double rel_tol) {
    if (!(z > 0)) throw ValidationError("z", "SNR argument must be > 0");
    const double rate = c.k2 / c.k1;
    const double tail = c.k1 / (c.k2 * c.k2 * z);
    auto exponent = [&](double t) { return -rate * (c.k3 + t) * z / t - tail * t * t / (c.k3 + t); };
    const double t_peak = peak_location(exponent);
    const double e_peak = exponent(t_peak);
    const double edge = bulk_edge(exponent, t_peak, e_peak);
    if (underflows(e_peak, -std::log(c.k2 * z), edge)) return {0.0, 0.0};

    QuadratureSettings s;
    s.rel_tol = rel_tol;
    s.scale = edge;
    auto r = integrate_semi_infinite(
        [&](double t) {
            const double v = std::exp(exponent(t) - e_peak);
            return std::isfinite(v) ? v : 0.0;
        },
        s);
    const double norm = std::exp(e_peak) / (c.k2 * z);
    checked(r, "exact two-hop pdf");
    return {r.value * norm, r.err_estimate * norm};
}

// High-SNR pdf in integral form:
// exp(-rate z)/(k2 z) * int_0^inf exp(-A/t - B t^2) dt, A = rate k3 z, B = k1/(k2^2 k3 z).
Density asymptotic_density_quad(const DerivedConstants& c, double z, double rel_tol) {
    if (!(z > 0)) throw ValidationError("z", "SNR argument must be > 0");
    const double rate = c.k2 / c.k1;
    const double A = rate * c.k3 * z;
    const double B = c.k1 / (c.k2 * c.k2 * c.k3 * z);
    const double t_peak = std::cbrt(A / 2) / std::cbrt(B);
    const auto exponent = [&](double t) { return -A / t - B * t * t; };
    const double e_peak = exponent(t_peak);
    const double edge = bulk_edge(exponent, t_peak, e_peak);
    if (underflows(e_peak, -rate * z - std::log(c.k2 * z), edge)) return {0.0, 0.0};

    QuadratureSettings s;
    s.rel_tol = rel_tol;
    s.scale = edge;
    auto r = integrate_semi_infinite(
        [&](double t) {
            const double v = std::exp(exponent(t) - e_peak);
            return std::isfinite(v) ? v : 0.0;
        },
        s);
    const double norm = std::exp(e_peak - rate * z) / (c.k2 * z);
    checked(r, "asymptotic two-hop pdf (integral form)");
    return {r.value * norm, r.err_estimate * norm};
}

double clamp_probability(double v, double err) {
    if (v < 0) {
        if (v < kNegativeClamp) throw ConvergenceError("ABER evaluated negative", v, err);
        return 0.0;
    }
    return v;
}

// int_0^inf kernel(z) * density(z) dz with z = w^2 to tame the z^{-1/2} behaviour at 0.
template <class Kernel, class Dens>
AberPoint kernel_average(const DerivedConstants& c, Scheme scheme, Method method, const Kernel& kernel,
                         const Dens& density) {
    QuadratureSettings s;
    s.rel_tol = kOuterTol;
    s.scale = 1.0;
    auto r = integrate_semi_infinite(
        [&](double w) {
            const double z = w * w;
            if (z <= 0) return 0.0;
            const double k = kernel(z);
            if (k == 0) return 0.0;
            return 2 * w * k * density(z);
        },
        s);
    checked(r, "ABER kernel average");
    const double err = r.err_estimate + kInnerTol * std::abs(r.value);
    return {c.params, scheme, method, clamp_probability(r.value, err), err};
}

double th_kernel(double z) { return 0.5 * std::exp(-z); }

double lc_kernel(const DerivedConstants& c, double z) {
    return 0.125 * std::exp(-z) * lc_direct_average(c.gbar0, z);
}

MeijerGSpec laplace_spec(int order) {
    if (order == 0) return MeijerGSpec::make(3, 1, {0.0}, {-0.5, 0.0, 0.0});
    return MeijerGSpec::make(3, 1, {0.0}, {0.5, 1.0, 1.0});
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::TH: return "TH";
        case Scheme::LC: return "LC";
        case Scheme::DirectOnly: return "DIRECT_ONLY";
    }
    return "?";
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::ExactQuad: return "EXACT_QUAD";
        case Method::AsymptoticClosed: return "ASYMPTOTIC_CLOSED";
        case Method::AsymptoticQuad: return "ASYMPTOTIC_QUAD";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
    const auto u = upper(s);
    if (u == "TH") return Scheme::TH;
    if (u == "LC") return Scheme::LC;
    if (u == "DIRECT_ONLY" || u == "DIRECT") return Scheme::DirectOnly;
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view s) {
    const auto u = upper(s);
    if (u == "EXACT_QUAD") return Method::ExactQuad;
    if (u == "ASYMPTOTIC_CLOSED") return Method::AsymptoticClosed;
    if (u == "ASYMPTOTIC_QUAD") return Method::AsymptoticQuad;
    return std::nullopt;
}

double pdf_two_hop_exact(const DerivedConstants& c, double z) { return exact_density(c, z, kPdfTol).value; }

double pdf_two_hop_asymptotic(const DerivedConstants& c, double z) {
    if (!(z > 0)) throw ValidationError("z", "SNR argument must be > 0");
    static const MeijerGSpec spec = MeijerGSpec::make(3, 0, {}, {-0.5, 0.0, 0.0});
    const auto g = meijer_g_scaled(spec, c.j1 * z);
    return c.j1 / kSqrtPi * g.mantissa * std::exp(g.log_scale - c.decay_rate() * z);
}

double pdf_two_hop_asymptotic_quad(const DerivedConstants& c, double z) {
    return asymptotic_density_quad(c, z, kPdfTol).value;
}

double lc_direct_average(double gbar0, double z) noexcept {
    const double d = 1.0 + gbar0;
    return (4.0 + z) / d + gbar0 / (d * d);
}

AberPoint aber_direct(const DerivedConstants& c) {
    return {c.params, Scheme::DirectOnly, Method::ExactQuad, 0.5 / (1.0 + c.gbar0), 0.0};
}

AberPoint aber_th_exact(const DerivedConstants& c) {
    return kernel_average(c, Scheme::TH, Method::ExactQuad, th_kernel,
                          [&](double z) { return exact_density(c, z, kInnerTol).value; });
}

AberPoint aber_lc_exact(const DerivedConstants& c) {
    return kernel_average(
        c, Scheme::LC, Method::ExactQuad, [&](double z) { return lc_kernel(c, z); },
        [&](double z) { return exact_density(c, z, kInnerTol).value; });
}

AberPoint aber_th_asymptotic_quad(const DerivedConstants& c) {
    return kernel_average(c, Scheme::TH, Method::AsymptoticQuad, th_kernel,
                          [&](double z) { return asymptotic_density_quad(c, z, kInnerTol).value; });
}

AberPoint aber_lc_asymptotic_quad(const DerivedConstants& c) {
    return kernel_average(
        c, Scheme::LC, Method::AsymptoticQuad, [&](double z) { return lc_kernel(c, z); },
        [&](double z) { return asymptotic_density_quad(c, z, kInnerTol).value; });
}

double asymptotic_laplace_closed(const DerivedConstants& c, int order) {
    if (order != 0 && order != 1) throw ValidationError("order", "must be 0 or 1");
    const double s = -c.j2;
    const double g = meijer_g(laplace_spec(order), c.j1 / s);
    // order 1: z G(j1 z | b) = G(j1 z | b + 1) / j1 absorbs the j1 prefactor
    const double pre = order == 0 ? c.j1 / (kSqrtPi * s) : 1.0 / (kSqrtPi * s);
    return pre * g;
}

AberPoint aber_th_asymptotic(const DerivedConstants& c) {
    const double l0 = asymptotic_laplace_closed(c, 0);
    const double v = 0.5 * l0;
    const double err = 1e-11 * std::abs(v);
    return {c.params, Scheme::TH, Method::AsymptoticClosed, clamp_probability(v, err), err};
}

AberPoint aber_lc_asymptotic(const DerivedConstants& c) {
    const double g0 = c.gbar0;
    const double d = 1.0 + g0;
    const double l0 = asymptotic_laplace_closed(c, 0);
    const double l1 = asymptotic_laplace_closed(c, 1);
    const double v = 0.125 * ((4.0 + 5.0 * g0) / (d * d) * l0 + l1 / d);
    const double err = 1e-11 * std::abs(v);
    return {c.params, Scheme::LC, Method::AsymptoticClosed, clamp_probability(v, err), err};
}

AberPoint aber(const DerivedConstants& c, Scheme scheme, Method method) {
    if (scheme == Scheme::DirectOnly) {
        auto p = aber_direct(c);
        p.method = method;
        return p;
    }
    const bool th = scheme == Scheme::TH;
    switch (method) {
        case Method::ExactQuad: return th ? aber_th_exact(c) : aber_lc_exact(c);
        case Method::AsymptoticClosed: return th ? aber_th_asymptotic(c) : aber_lc_asymptotic(c);
        case Method::AsymptoticQuad: return th ? aber_th_asymptotic_quad(c) : aber_lc_asymptotic_quad(c);
    }
    throw ValidationError("method", "unknown method");
}

const std::string_view kJ2SignNote =
    "Sign note: j2 = -1 - d1^alpha*N1/(P0*phi) is always below -1, so the printed closed forms "
    "evaluate G^{3,1}_{1,3} at the negative argument j1/j2 and divide by the negative j2. The "
    "Laplace transform of the high-SNR pdf under exp(-z) produces the positive rate s = -j2 instead; "
    "the normative forms use j1/s and 1/s, and the single-TH form also carries the factor "
    "j1/(2*sqrt(pi)). Negative-argument values are taken on the principal branch arg = +pi.";

PrintedFormAudit reconcile_printed_forms(const DerivedConstants& c) {
    PrintedFormAudit a;
    a.p0 = c.params.p0;
    a.j1 = c.j1;
    a.j2 = c.j2;
    a.th_quad = aber_th_asymptotic_quad(c).value;
    a.th_normative = aber_th_asymptotic(c).value;
    a.lc_quad = aber_lc_asymptotic_quad(c).value;
    a.lc_normative = aber_lc_asymptotic(c).value;

    const auto b0 = laplace_spec(0);
    const auto b1 = laplace_spec(1);
    const double g0 = c.gbar0;
    const double d = 1.0 + g0;
    const auto lc_form = [&](auto j2, auto g_first, auto g_second) {
        return c.j1 * (4.0 + 5.0 * g0) / (8.0 * j2 * kSqrtPi * d * d) * g_first +
               1.0 / (8.0 * j2 * kSqrtPi * d) * g_second;
    };

    // literal: negative argument j1/j2, division by negative j2
    const auto neg0 = meijer_g_signed(b0, c.j1 / c.j2);
    const auto neg1 = meijer_g_signed(b1, c.j1 / c.j2);
    a.th_printed = neg0 / c.j2;
    a.lc_printed = lc_form(c.j2, neg0, neg1);

    // j2 -> -j2
    const double s = -c.j2;
    const double pos0 = meijer_g(b0, c.j1 / s);
    const double pos1 = meijer_g(b1, c.j1 / s);
    a.th_printed_abs_j2 = pos0 / s;
    a.lc_printed_abs_j2 = lc_form(s, pos0, pos1);
    return a;
}

}  // namespace swipt
