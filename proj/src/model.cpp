#include "swipt/model.hpp"

#include <cmath>
#include <string>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

}  // namespace

void validate(const SystemParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(p.p0) && p.p0 > 0, "p0", "must be > 0");
    require(finite(p.eta) && p.eta > 0 && p.eta <= 1, "eta", "must lie in (0, 1]");
    require(finite(p.theta) && p.theta >= 0 && p.theta <= 1, "theta", "must lie in [0, 1]");
    require(finite(p.alpha) && p.alpha > 0, "alpha", "must be > 0");
    require(finite(p.d0) && p.d0 > 0, "d0", "must be > 0");
    require(finite(p.d1) && p.d1 > 0, "d1", "must be > 0");
    require(finite(p.d2) && p.d2 > 0, "d2", "must be > 0");
    const struct {
        const char* name;
        double v;
    } noises[] = {{"n0a", p.n0a}, {"n0c", p.n0c}, {"n1a", p.n1a},
                  {"n1c", p.n1c}, {"n2a", p.n2a}, {"n2c", p.n2c}};
    for (const auto& n : noises) require(finite(n.v) && n.v >= 0, n.name, "must be >= 0");
    require(p.n0a + p.n0c > 0, "n0a", "total noise at the destination (phase I) must be > 0");
    require((1 - p.theta) * p.n1a + p.n1c > 0, "n1c", "total noise at the relay must be > 0");
    require(p.n2a + p.n2c > 0, "n2a", "total noise at the destination (phase II) must be > 0");
}

DerivedConstants derive_constants(const SystemParams& p) {
    validate(p);
    if (p.theta == 0.0 || p.theta == 1.0) {
        throw DegenerateConfigError("theta = " + std::to_string(p.theta) +
                                    " makes eta*theta*phi vanish; the analytic constants are undefined");
    }

    DerivedConstants c;
    c.params = p;
    c.phi = 1.0 - p.theta;
    c.n_tot0 = p.n0a + p.n0c;
    c.n_tot1 = c.phi * p.n1a + p.n1c;
    c.n_tot2 = p.n2a + p.n2c;

    const double d0a = std::pow(p.d0, p.alpha);
    const double d1a = std::pow(p.d1, p.alpha);
    const double d2a = std::pow(p.d2, p.alpha);
    const double eh = p.eta * p.theta;

    c.k1 = p.p0 * p.p0 * eh * c.phi / d1a;
    c.k2 = c.n_tot1 * p.p0 * eh;
    c.k3 = d2a * c.n_tot2 * (d1a * c.n_tot1 + p.p0 * c.phi);
    c.j1 = d1a * c.k3 / (4.0 * p.p0 * p.p0 * eh * c.phi);
    c.j2 = -1.0 - d1a * c.n_tot1 / (p.p0 * c.phi);
    c.gbar0 = p.p0 / (d0a * c.n_tot0);
    c.nc_av = c.n_tot2 + c.n_tot1 * p.p0 * eh / (d1a * d2a * c.n_tot1 + d2a * p.p0 * c.phi);
    return c;
}

double two_hop_snr(const DerivedConstants& c, double x, double y) noexcept {
    if (x <= 0 || y <= 0) return 0.0;
    return c.k1 * x * x * y / (c.k3 + c.k2 * x * y);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

}  // namespace swipt
