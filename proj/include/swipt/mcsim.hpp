#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swipt/analytic.hpp"
#include "swipt/model.hpp"
#include "swipt/rng.hpp"

namespace swipt {

enum class EhMode {
    IEH,  ///< harvested power follows the instantaneous |h1|^2
    AEH,  ///< harvested power follows its mean
    CON,  ///< no harvesting; the relay has its own supply
};

/// How the combiner weights the two-hop branch.
enum class LcWeights {
    Average,        ///< 1/Nc_av: no channel knowledge at the destination
    Instantaneous,  ///< 1/Nc with the frame's |h1|^2 |h2|^2 (genie-aided)
};

/// Power budget of the CON baseline.
enum class ConPower {
    PerNode,     ///< source and relay each transmit P0
    TotalSplit,  ///< source and relay each transmit P0/2
};

std::string_view to_string(EhMode m) noexcept;
std::string_view to_string(LcWeights w) noexcept;
std::string_view to_string(ConPower p) noexcept;
std::optional<EhMode> parse_eh_mode(std::string_view s);
std::optional<LcWeights> parse_lc_weights(std::string_view s);
std::optional<ConPower> parse_con_power(std::string_view s);

struct McConfig {
    SystemParams params;
    Scheme scheme = Scheme::TH;
    EhMode eh_mode = EhMode::IEH;
    std::uint64_t frames = 100000;
    int symbols_per_frame = 64;  ///< L, including the reference symbol
    std::uint64_t seed = 1;
    std::uint64_t min_errors = 0;  ///< stop once this many errors are seen; 0 disables
    LcWeights lc_weights = LcWeights::Average;
    ConPower con_power = ConPower::PerNode;
    /// Replace h1 by h1/|h1| in every frame (test hook: makes IEH and AEH coincide).
    bool force_unit_sr_power = false;
    unsigned threads = 0;  ///< 0 = hardware concurrency
};

void validate(const McConfig& cfg);

struct McResult {
    double ber = 0;
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    double ci95_halfwidth = 0;
    std::uint64_t seed = 0;
    std::uint64_t frames_run = 0;
};

/// Builds ber and the normal-approximation half-width from the counts.
McResult make_result(std::uint64_t errors, std::uint64_t bits, std::uint64_t seed, std::uint64_t frames);

/// s[0] = 1, s[n] = s[n-1] * bits[n-1].
std::vector<int> diff_encode(std::span<const int> bits);

/// Per-frame bit errors of every detector, from one shared set of channel and
/// noise draws.
struct FrameErrors {
    int th = 0;
    int lc = 0;
    int direct = 0;

    int of(Scheme s) const noexcept;
};

/// Frame size at which the early-stop rule is checked.
inline constexpr std::uint64_t kEarlyStopBatch = 4096;

/// One block-fading frame of L symbols.
FrameErrors simulate_frame(const McConfig& cfg, Xoshiro256& rng);

/// Frame i draws from Xoshiro256::substream(cfg.seed, i). With min_errors > 0
/// frames are processed in batches of kEarlyStopBatch and the run stops after
/// the first batch that brings the error count to min_errors.
McResult run_monte_carlo(const McConfig& cfg);

/// All three detectors over the same frames, indexed TH, LC, DIRECT_ONLY.
/// The early-stop rule waits until every detector has min_errors.
std::array<McResult, 3> run_monte_carlo_all(const McConfig& cfg);

/// run_monte_carlo for the AEH and CON baselines; rejects IEH.
McResult baseline_variants(const McConfig& cfg);

/// Two-hop SNR k1 X^2 Y / (k3 + k2 X Y) of n independent frames, with X, Y
/// drawn as the simulator draws |h1|^2, |h2|^2.
std::vector<double> sample_two_hop_snr(const DerivedConstants& c, std::uint64_t n, std::uint64_t seed,
                                       unsigned threads = 0);

}  // namespace swipt
