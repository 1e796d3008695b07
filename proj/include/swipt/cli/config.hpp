#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/analytic.hpp"
#include "swipt/errors.hpp"
#include "swipt/mcsim.hpp"
#include "swipt/model.hpp"

namespace swipt::cli {

/// Parse failure in a config document or a command-line override.
/// `line()` is 0 for overrides.
class ConfigError : public ValidationError {
public:
    ConfigError(std::string origin, int line, std::string key, const std::string& what);
    const std::string& origin() const noexcept { return origin_; }
    int line() const noexcept { return line_; }

private:
    std::string origin_;
    int line_;
};

/// Everything a single invocation can read from a config file.
struct RunConfig {
    SystemParams params;
    McConfig mc;  ///< params field is ignored; commands copy `params` in
    Scheme scheme = Scheme::TH;
    Method method = Method::ExactQuad;

    // sweep
    std::string axis = "p0_db";
    std::vector<double> grid;
    std::optional<double> grid_start, grid_stop, grid_step;
    std::vector<std::string> series;
    std::optional<double> d2_complement;  ///< d2 = value - d1 on the d1 axis
    std::string title;
};

/// Applies one `key = value` assignment. `origin` and `line` only feed the
/// diagnostics.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& origin,
                   int line);

/// Applies a `key=value` override given on the command line.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Parses a key/value document: one `key = value` per line, `#` starts a
/// comment, blank lines are ignored. Later keys win over earlier ones.
void parse_config_text(RunConfig& cfg, std::string_view text, const std::string& origin);

/// Reads and parses a file; throws IoError if it cannot be read.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Materializes grid_start/stop/step into `grid` (if given) and validates.
void finalize(RunConfig& cfg);

/// Keys accepted by apply_setting, for help output.
const std::vector<std::string>& known_keys();

/// Built-in configurations by name ("p0_sweep", "relay_position"); nullopt when unknown.
std::optional<std::string_view> preset_text(std::string_view name);

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace swipt::cli
