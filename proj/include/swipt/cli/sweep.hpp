#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swipt/analytic.hpp"
#include "swipt/cli/config.hpp"
#include "swipt/mcsim.hpp"
#include "swipt/model.hpp"

namespace swipt::cli {

enum class Axis { P0_dB, D1, Theta };

std::string_view to_string(Axis a) noexcept;

/// One curve: "<EH>-<SCHEME>:<METHOD>" with optional "@key=value" parameter
/// overrides, e.g. "IEH-TH:EXACT_QUAD@theta=0.3" or "CON-LC:MC".
/// METHOD is EXACT_QUAD, ASYMPTOTIC_CLOSED, ASYMPTOTIC_QUAD or MC.
struct SeriesSpec {
    std::string label;  ///< text before ':' plus the overrides
    EhMode eh_mode = EhMode::IEH;
    Scheme scheme = Scheme::TH;
    std::optional<Method> method;  ///< nullopt = Monte Carlo
    std::vector<std::pair<std::string, double>> overrides;

    std::string method_name() const;
};

/// Throws ValidationError for malformed labels and for analytic methods on
/// AEH/CON (the analysis covers IEH only).
SeriesSpec parse_series(std::string_view text);

struct SweepSpec {
    Axis axis = Axis::P0_dB;
    std::vector<double> grid;
    SystemParams fixed;
    std::vector<SeriesSpec> series;
    McConfig mc;  ///< frames, L, seed, weights and power policy for MC series
    std::optional<double> d2_complement;
    std::string title;
};

SweepSpec make_sweep_spec(const RunConfig& cfg);

/// Parameters of one grid point for one series.
SystemParams point_params(const SweepSpec& spec, const SeriesSpec& series, double axis_value);

enum class RowStatus { Ok, Validation, Degenerate, NonConvergence, Unsupported };

std::string_view to_string(RowStatus s) noexcept;

struct SweepRow {
    double axis_value = 0;
    std::string series;
    std::string method;
    std::optional<double> value;  ///< empty when the point failed
    double error = 0;             ///< numeric error bound, or ci95 half-width for MC
    std::optional<std::uint64_t> seed;
    RowStatus status = RowStatus::Ok;
    std::string reason;
    double wall_seconds = 0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  ///< ordered by (axis value, series)
    std::vector<std::pair<std::string, std::string>> metadata;

    bool all_ok() const;
    /// 0 when every row is ok, 1 if any row failed validation, else 2.
    int exit_code() const;
};

/// Evaluates every (grid point, series) pair on a worker pool of `threads`
/// (0 = hardware concurrency). Monte Carlo points run single-threaded inside
/// the pool. Failures become rows with a status and reason.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Evaluates one row; never throws for numeric failures.
SweepRow evaluate_point(const SweepSpec& spec, const SeriesSpec& series, double axis_value, unsigned mc_threads);

/// `#`-prefixed metadata, then the header
/// axis,axis_value,series,method,value,error,seed,status,wall_seconds
void write_csv(std::ostream& out, const SweepResult& r);

/// Formats a value the way the CSV does: scientific below 1e-3.
std::string format_number(double v);

/// Log-y line plot, one polyline per (series, method).
void write_svg(std::ostream& out, const SweepResult& r);

inline constexpr std::string_view kCsvHeader = "axis,axis_value,series,method,value,error,seed,status,wall_seconds";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace swipt::cli
