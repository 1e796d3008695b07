#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"
#include "swipt/errors.hpp"
#include "swipt/model.hpp"
#include "swipt/numquad.hpp"
#include "swipt/specfun.hpp"

using namespace swipt;

namespace {

const MeijerGSpec kExp = MeijerGSpec::make(1, 0, {}, {0.0});
const MeijerGSpec kL0 = MeijerGSpec::make(3, 1, {0.0}, {-0.5, 0.0, 0.0});
const MeijerGSpec kL1 = MeijerGSpec::make(3, 1, {0.0}, {0.5, 1.0, 1.0});
const MeijerGSpec kPdf = MeijerGSpec::make(3, 0, {}, {-0.5, 0.0, 0.0});

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return g;
}

}  // namespace

TEST_CASE("log-gamma against the real gamma function and its identities") {
    for (double x = 0.1; x < 60; x *= 1.37) {
        CHECK(log_gamma({x, 0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
    gen::Gen g(31);
    for (int i = 0; i < 300; ++i) {
        const std::complex<double> z(g.uniform(-9.5, 10), g.uniform(-1000, 1000));
        INFO("z=", z);
        // |log Gamma| reaches ~|z| log|z|; its last bit bounds what any identity can show
        const double floor = 1e-13 + 8 * 2.2e-16 * std::abs(log_gamma(2.0 * z));
        // recurrence Gamma(z+1) = z Gamma(z)
        const auto d1 = std::exp(log_gamma(z + 1.0) - log_gamma(z) - std::log(z));
        CHECK(std::abs(d1 - 1.0) < floor);
        // duplication Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z)
        const auto d2 = std::exp(log_gamma(z) + log_gamma(z + 0.5) - (1.0 - 2.0 * z) * std::log(2.0) -
                                 0.5 * std::log(std::numbers::pi) - log_gamma(2.0 * z));
        CHECK(std::abs(d2 - 1.0) < 2 * floor);
        // reflection Gamma(z) Gamma(1-z) = pi / sin(pi z), away from overflow of sin
        if (std::abs(z.imag()) < 100) {
            const auto d3 = std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(std::numbers::pi * z) /
                            std::numbers::pi;
            CHECK(std::abs(d3 - 1.0) < 1e-11);
        }
    }
    CHECK(std::isinf(log_gamma({-2.0, 0}).real()));
}

TEST_CASE("exponential and Bessel-K reductions on a log grid") {
    for (double x : log_grid(1e-3, 1e3, 31)) {
        INFO("x=", x);
        const auto ge = meijer_g_scaled(kExp, x);
        CHECK(std::abs(std::expm1(std::log(ge.mantissa) + ge.log_scale + x)) < 1e-9);
        for (double beta : {0.0, 0.5, -0.25}) {
            const auto spec = MeijerGSpec::make(2, 0, {}, {beta, beta});
            const double expect = 2 * std::pow(x, beta) * oracle::bessel_k0(2 * std::sqrt(x));
            CHECK(rel(meijer_g(spec, x), expect) < 1e-9);
        }
        const auto inv = MeijerGSpec::make(0, 1, {1.0}, {});
        if (x > 0.01) CHECK(rel(meijer_g(inv, x), std::exp(-1 / x)) < 1e-9);
    }
}

TEST_CASE("frozen values") {
    const auto c = derive_constants(SystemParams{});
    CHECK(rel(meijer_g(kExp, 1.0), std::exp(-1.0)) < 1e-12);
    CHECK(rel(meijer_g(MeijerGSpec::make(2, 0, {}, {0.0, 0.0}), 1.0), oracle::frozen::two_k0_2) < 1e-10);
    CHECK(rel(meijer_g(kPdf, c.j1), oracle::frozen::g30_at_j1) < 1e-10);
    const double s = -c.j2;
    CHECK(rel(meijer_g(kL0, c.j1 / s), oracle::frozen::g31_l0) < 1e-10);
    CHECK(rel(meijer_g(kL1, c.j1 / s), oracle::frozen::g31_l1) < 1e-10);
}

TEST_CASE("high-SNR pdf identity for the three-parameter class") {
    const auto c = derive_constants(SystemParams{});
    const double z = 1.0;
    const double expect = std::sqrt(std::numbers::pi) * std::exp(c.decay_rate() * z) *
                          oracle::pdf_two_hop_high_snr(c, z) / c.j1;
    CHECK(rel(meijer_g(kPdf, c.j1 * z), expect) < 1e-8);
}

TEST_CASE("G31 is the Laplace transform of G30") {
    for (double y : {0.01, 0.07, 0.5, 3.0}) {
        const double lt = oracle::expsinh(
            [&](double t) { return t > 750 || y * t > 1e6 ? 0.0 : std::exp(-t) * meijer_g(kPdf, y * t); }, 1.0, 1e-11);
        INFO("y=", y);
        CHECK(rel(meijer_g(kL0, y), lt) < 1e-9);
    }
}

TEST_CASE("moving the contour inside the strip does not change the value") {
    // Far from the saddle the integrand grows by orders of magnitude over the
    // result and cancellation eats the digits, so shifts stay within half a unit
    // of the automatic abscissa.
    gen::Gen g(32);
    for (const auto& spec : {kPdf, kL0, kL1, MeijerGSpec::make(2, 0, {}, {0.3, 0.3})}) {
        for (double x : {1e-3, 0.08, 1.0, 40.0}) {
            const auto lay = pole_layout(spec, x);
            const double lo = std::max(lay.lower_bound, lay.contour_abscissa - 0.5);
            const double hi = std::min(lay.upper_bound, lay.contour_abscissa + 0.5);
            const double base = meijer_g(spec, x);
            for (int k = 0; k < 3; ++k) {
                const double a = lo + (hi - lo) * g.uniform(0.05, 0.95);
                MeijerGOptions o;
                o.abscissa = a;
                INFO("x=", x, " abscissa=", a);
                CHECK(rel(meijer_g(spec, x, o), base) < 1e-10);
            }
        }
    }
}

TEST_CASE("scaled values survive under- and overflow") {
    const auto tiny = meijer_g_scaled(kExp, 800.0);
    CHECK(tiny.log_abs() == doctest::Approx(-800.0).epsilon(1e-10));
    const auto k = meijer_g_scaled(MeijerGSpec::make(2, 0, {}, {0.0, 0.0}), 2e5);
    // 2 K0(2 sqrt x) ~ sqrt(pi) x^{-1/4} e^{-2 sqrt x}
    const double expect = 0.5 * std::log(std::numbers::pi) - 0.25 * std::log(2e5) - 2 * std::sqrt(2e5);
    CHECK(k.log_abs() == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("signed evaluation") {
    const auto c = derive_constants(SystemParams{});
    for (double x : {0.01, 0.3, 2.0}) {
        const auto v = meijer_g_signed(kL0, x);
        CHECK(rel(v.real(), meijer_g(kL0, x)) < 1e-12);
        CHECK(v.imag() == 0.0);
    }
    // e^{-x} is entire, so both sheets give e at x = -1
    for (auto b : {Branch::Upper, Branch::Lower}) {
        const auto e = meijer_g_signed(kExp, -1.0, b);
        CHECK(e.real() == doctest::Approx(std::numbers::e).epsilon(1e-10));
        CHECK(std::abs(e.imag()) < 1e-10);
    }
    const auto neg0 = meijer_g_signed(kL0, c.j1 / c.j2);
    CHECK(neg0.real() == doctest::Approx(oracle::frozen::g31_neg_re).epsilon(1e-9));
    CHECK(neg0.imag() == doctest::Approx(oracle::frozen::g31_neg_im).epsilon(1e-9));
    const auto neg1 = meijer_g_signed(kL1, c.j1 / c.j2);
    CHECK(neg1.real() == doctest::Approx(oracle::frozen::g31_neg1_re).epsilon(1e-9));
    CHECK(neg1.imag() == doctest::Approx(oracle::frozen::g31_neg1_im).epsilon(1e-9));
}

TEST_CASE("property: the two sheets are complex conjugates") {
    gen::Gen g(33);
    for (int i = 0; i < 12; ++i) {
        const double x = -g.log_uniform(1e-2, 5);
        INFO("x=", x);
        for (const auto& spec : {kL0, kL1}) {
            const auto up = meijer_g_signed(spec, x, Branch::Upper);
            const auto lo = meijer_g_signed(spec, x, Branch::Lower);
            CHECK(std::abs(up - std::conj(lo)) < 1e-9 * std::abs(up));
        }
    }
}

TEST_CASE("line and loop contours agree where both converge") {
    // G^{3,1}_{1,3} has delta = m + n - (p+q)/2 = 2 > 1: the line converges at arg = pi
    for (double x : {-0.05, -0.4}) {
        const auto line = meijer_g_signed(kL0, x, Branch::Upper, ContourShape::Line);
        const auto loop = meijer_g_signed(kL0, x, Branch::Upper, ContourShape::Loop);
        CHECK(std::abs(line - loop) < 1e-8 * std::abs(line));
    }
}

TEST_CASE("error signals") {
    CHECK_THROWS_AS(meijer_g(kExp, 0.0), ValidationError);
    CHECK_THROWS_AS(meijer_g(kExp, -1.0), ValidationError);
    CHECK_THROWS_AS(meijer_g_signed(kExp, 0.0), ValidationError);
    CHECK_THROWS_AS(meijer_g(MeijerGSpec::make(2, 1, {0.0}, {0.0, 0.0}), 1.0), UnsupportedError);
    // Gamma(1 - a + s) and Gamma(b - s) poles interleave when a - 1 >= b
    CHECK_THROWS_AS(meijer_g(MeijerGSpec::make(3, 1, {2.5}, {0.0, 0.0, 0.0}), 1.0), UnsupportedError);
    MeijerGOptions o;
    o.abscissa = 5.0;
    CHECK_THROWS_AS(meijer_g(kPdf, 1.0, o), UnsupportedError);
    CHECK(is_supported(kPdf));
    CHECK(is_supported(kL0));
    CHECK_FALSE(is_supported(MeijerGSpec::make(2, 2, {0, 0}, {0, 0})));
}

TEST_CASE("evaluation is deterministic") {
    for (double x : {1e-3, 0.1, 7.0}) {
        CHECK(meijer_g(kL0, x) == meijer_g(kL0, x));
        CHECK(meijer_g_signed(kL1, -x) == meijer_g_signed(kL1, -x));
    }
}
