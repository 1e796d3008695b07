#pragma once

namespace swipt {

/// Physical inputs of the source / relay / destination link.
///
/// Powers are linear (watts), distances in metres. Noise variances are split
/// into the receive-antenna part (`*a`) and the down-conversion part (`*c`) for
/// the destination in phase I (0), the relay (1) and the destination in
/// phase II (2).
struct SystemParams {
    double p0 = 10.0;     ///< source transmit power
    double eta = 0.7;     ///< energy conversion efficiency, (0, 1]
    double theta = 0.5;   ///< power-splitting ratio routed to harvesting, [0, 1]
    double alpha = 2.0;   ///< path-loss exponent
    double d0 = 1.0;      ///< source-destination distance
    double d1 = 1.0;      ///< source-relay distance
    double d2 = 1.0;      ///< relay-destination distance
    double n0a = 0.5, n0c = 0.5;
    double n1a = 0.5, n1c = 0.5;
    double n2a = 0.5, n2c = 0.5;

    bool operator==(const SystemParams&) const = default;
};

/// Throws ValidationError naming the first field that violates its range.
void validate(const SystemParams& p);

/// Constants shared by the analytic engine and the simulator.
struct DerivedConstants {
    SystemParams params;
    double phi = 0;      ///< information-processing fraction, 1 - theta
    double n_tot0 = 0;   ///< N0 = n0a + n0c
    double n_tot1 = 0;   ///< N1 = phi*n1a + n1c
    double n_tot2 = 0;   ///< N2 = n2a + n2c
    double k1 = 0, k2 = 0, k3 = 0;
    double j1 = 0, j2 = 0;
    double gbar0 = 0;    ///< average direct-link SNR
    double nc_av = 0;    ///< average equivalent two-hop noise variance

    /// Exponential decay rate of the asymptotic pdf, d1^a*N1/(P0*phi) = k2/k1.
    double decay_rate() const noexcept { return -1.0 - j2; }
};

/// Computes every derived constant.
///
/// Throws ValidationError for invalid params and DegenerateConfigError when
/// theta is 0 or 1 (the constants divide by eta*theta*phi).
DerivedConstants derive_constants(const SystemParams& p);

/// Instantaneous two-hop SNR k1*x^2*y / (k3 + k2*x*y) for channel power gains
/// x = |h1|^2, y = |h2|^2.
double two_hop_snr(const DerivedConstants& c, double x, double y) noexcept;

/// 10*log10(p0 / 1 W) and its inverse.
double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

}  // namespace swipt
