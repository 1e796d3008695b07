#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "swipt/model.hpp"

namespace swipt {

enum class Scheme { TH, LC, DirectOnly };

enum class Method {
    ExactQuad,         ///< quadrature of the exact single-integral pdf
    AsymptoticClosed,  ///< Meijer-G closed forms of the high-SNR pdf
    AsymptoticQuad,    ///< quadrature of the high-SNR pdf in integral form
};

std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(Method m) noexcept;
/// Case-insensitive; accepts "TH", "LC", "DIRECT_ONLY"/"DIRECT". nullopt when unknown.
std::optional<Scheme> parse_scheme(std::string_view s);
/// Accepts "EXACT_QUAD", "ASYMPTOTIC_CLOSED", "ASYMPTOTIC_QUAD".
std::optional<Method> parse_method(std::string_view s);

/// One average-bit-error-rate evaluation.
struct AberPoint {
    SystemParams params;
    Scheme scheme = Scheme::TH;
    Method method = Method::ExactQuad;
    double value = 0;         ///< in [0, 0.5]
    double err_estimate = 0;  ///< absolute numerical error bound
};

/// Exact pdf of the two-hop SNR, a single integral over (0, inf) evaluated at
/// rel_tol 1e-9. Throws ConvergenceError on quadrature failure.
double pdf_two_hop_exact(const DerivedConstants& c, double z);

/// High-SNR pdf in closed form:
/// j1/sqrt(pi) * exp(-z*d1^a*N1/(P0*phi)) * G^{3,0}_{0,3}(j1*z | -; -1/2, 0, 0).
double pdf_two_hop_asymptotic(const DerivedConstants& c, double z);

/// High-SNR pdf in its integral form, evaluated by quadrature.
double pdf_two_hop_asymptotic_quad(const DerivedConstants& c, double z);

/// Inner direct-link average of the LC kernel, done in closed form:
/// int (4+z+x) e^{-x} f_g0(x) dx = (4+z)/(1+g0) + g0/(1+g0)^2.
double lc_direct_average(double gbar0, double z) noexcept;

/// 1/(2(1+gbar0)): DBPSK over Rayleigh on the direct link alone.
AberPoint aber_direct(const DerivedConstants& c);

AberPoint aber_th_exact(const DerivedConstants& c);
AberPoint aber_lc_exact(const DerivedConstants& c);

/// (j1/(2 sqrt(pi))) (1/s) G^{3,1}_{1,3}(j1/s | 0; -1/2, 0, 0) with s = -j2.
AberPoint aber_th_asymptotic(const DerivedConstants& c);
/// (1/8)[(4+5g0)/(1+g0)^2 L0 + L1/(1+g0)] with L0, L1 the Laplace transforms of
/// the high-SNR pdf weighted by 1 and z, both in G^{3,1}_{1,3} form.
AberPoint aber_lc_asymptotic(const DerivedConstants& c);

AberPoint aber_th_asymptotic_quad(const DerivedConstants& c);
AberPoint aber_lc_asymptotic_quad(const DerivedConstants& c);

/// Dispatch on (scheme, method). DirectOnly ignores the method.
AberPoint aber(const DerivedConstants& c, Scheme scheme, Method method);

/// Laplace transforms of the high-SNR pdf at unit rate: order 0 gives
/// int e^{-z} f*(z) dz, order 1 gives int z e^{-z} f*(z) dz.
double asymptotic_laplace_closed(const DerivedConstants& c, int order);

/// Explains why the printed single-TH and LC closed forms use a negative
/// Meijer-G argument. Shared verbatim with docs/reconciliation.md.
extern const std::string_view kJ2SignNote;

/// The printed closed forms evaluated literally (negative argument j1/j2 on the
/// principal branch), next to the normative forms and the quadrature truth.
struct PrintedFormAudit {
    double p0 = 0;
    double j1 = 0, j2 = 0;
    double th_quad = 0, th_normative = 0;
    std::complex<double> th_printed;
    double th_printed_abs_j2 = 0;  ///< printed TH with j2 replaced by -j2
    double lc_quad = 0, lc_normative = 0;
    std::complex<double> lc_printed;
    double lc_printed_abs_j2 = 0;  ///< printed LC with j2 replaced by -j2

    double th_normative_over_quad() const { return th_normative / th_quad; }
    double lc_normative_over_quad() const { return lc_normative / lc_quad; }
    /// 2*sqrt(pi)/j1 when the printed form only lacks the prefactor
    double th_abs_j2_over_normative() const { return th_printed_abs_j2 / th_normative; }
    double lc_abs_j2_over_normative() const { return lc_printed_abs_j2 / lc_normative; }
};

PrintedFormAudit reconcile_printed_forms(const DerivedConstants& c);

}  // namespace swipt
