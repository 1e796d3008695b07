#include "swipt/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace swipt::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

struct Ctx {
    const std::string& origin;
    int line;
    std::string key;

    [[noreturn]] void fail(const std::string& what) const { throw ConfigError(origin, line, key, what); }

    double number(std::string_view v) const {
        double out = 0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (ec != std::errc() || ptr != end || v.empty()) fail("expected a number, got '" + std::string(v) + "'");
        if (!std::isfinite(out)) fail("value must be finite");
        return out;
    }

    // Accepts "1e6" style counts as long as they are whole numbers.
    std::uint64_t count(std::string_view v) const {
        const double d = number(v);
        if (d < 0 || d != std::floor(d) || d > 1.8e19) fail("expected a non-negative whole number");
        return static_cast<std::uint64_t>(d);
    }

    std::vector<double> numbers(std::string_view v) const {
        std::vector<double> out;
        if (trim(v).empty()) return out;
        for (auto part : split(v, ',')) out.push_back(number(part));
        return out;
    }
};

double* param_field(SystemParams& p, std::string_view key) {
    if (key == "p0") return &p.p0;
    if (key == "eta") return &p.eta;
    if (key == "theta") return &p.theta;
    if (key == "alpha") return &p.alpha;
    if (key == "d0") return &p.d0;
    if (key == "d1") return &p.d1;
    if (key == "d2") return &p.d2;
    if (key == "n0a") return &p.n0a;
    if (key == "n0c") return &p.n0c;
    if (key == "n1a") return &p.n1a;
    if (key == "n1c") return &p.n1c;
    if (key == "n2a") return &p.n2a;
    if (key == "n2c") return &p.n2c;
    return nullptr;
}

constexpr std::string_view kP0Sweep = R"(# ABER against source power: IEH analysis and simulation, CON and AEH baselines
title = ABER vs P0
eta = 0.7
theta = 0.5
alpha = 2
d0 = 1
d1 = 1
d2 = 1
noise = 0.5
p0_db = 10
axis = p0_db
grid_start = 0
grid_stop = 30
grid_step = 2.5
series = IEH-TH:EXACT_QUAD, IEH-TH:ASYMPTOTIC_CLOSED, IEH-TH:MC, IEH-LC:EXACT_QUAD, IEH-LC:ASYMPTOTIC_CLOSED, IEH-LC:MC, CON-TH:MC, CON-LC:MC, AEH-TH:MC, AEH-LC:MC
frames = 1000000
symbols_per_frame = 2
seed = 20240601
min_errors = 0
lc_weights = average
con_power = per_node
)";

constexpr std::string_view kRelayPosition = R"(# TH ABER against relay position with d2 = 3 - d1
title = TH ABER vs d1
eta = 0.7
theta = 0.5
alpha = 2
d0 = 1
d1 = 1
d2 = 2
noise = 0.5
p0_db = 30
axis = d1
grid_start = 0.5
grid_stop = 2.5
grid_step = 0.1
d2_complement = 3
series = IEH-TH:EXACT_QUAD@theta=0.3, IEH-TH:EXACT_QUAD@theta=0.5, IEH-TH:EXACT_QUAD@theta=0.7
seed = 20240601
)";

}  // namespace

ConfigError::ConfigError(std::string origin, int line, std::string key, const std::string& what)
    : ValidationError(FullMessage{}, key, (line > 0 ? origin + ":" + std::to_string(line) + ": " : origin + ": ") + "'" + key +
                               "': " + what),
      origin_(std::move(origin)),
      line_(line) {}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "p0", "p0_db", "eta", "theta", "alpha", "d0", "d1", "d2", "n0a", "n0c", "n1a", "n1c", "n2a", "n2c",
        "noise", "scheme", "method", "eh_mode", "frames", "symbols_per_frame", "seed", "min_errors",
        "threads", "lc_weights", "con_power", "axis", "grid", "grid_start", "grid_stop", "grid_step",
        "series", "d2_complement", "title"};
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view raw_value, const std::string& origin,
                   int line) {
    const std::string key = lower(trim(raw_key));
    const std::string_view v = trim(raw_value);
    const Ctx ctx{origin, line, key};
    if (key.empty()) ctx.fail("empty key");

    if (double* f = param_field(cfg.params, key)) {
        *f = ctx.number(v);
    } else if (key == "p0_db") {
        cfg.params.p0 = db_to_linear(ctx.number(v));
    } else if (key == "noise") {
        const double n = ctx.number(v);
        auto& p = cfg.params;
        p.n0a = p.n0c = p.n1a = p.n1c = p.n2a = p.n2c = n;
    } else if (key == "scheme") {
        const auto s = parse_scheme(v);
        if (!s) ctx.fail("expected TH, LC or DIRECT_ONLY");
        cfg.scheme = *s;
    } else if (key == "method") {
        const auto m = parse_method(v);
        if (!m) ctx.fail("expected EXACT_QUAD, ASYMPTOTIC_CLOSED or ASYMPTOTIC_QUAD");
        cfg.method = *m;
    } else if (key == "eh_mode") {
        const auto m = parse_eh_mode(v);
        if (!m) ctx.fail("expected IEH, AEH or CON");
        cfg.mc.eh_mode = *m;
    } else if (key == "frames") {
        cfg.mc.frames = ctx.count(v);
    } else if (key == "symbols_per_frame") {
        const auto n = ctx.count(v);
        if (n > 1u << 20) ctx.fail("too large");
        cfg.mc.symbols_per_frame = static_cast<int>(n);
    } else if (key == "seed") {
        // seeds use the full 64-bit range, so no detour through double
        std::uint64_t s = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) ctx.fail("expected an unsigned 64-bit integer");
        cfg.mc.seed = s;
    } else if (key == "min_errors") {
        cfg.mc.min_errors = ctx.count(v);
    } else if (key == "threads") {
        const auto n = ctx.count(v);
        if (n > 4096) ctx.fail("too large");
        cfg.mc.threads = static_cast<unsigned>(n);
    } else if (key == "lc_weights") {
        const auto w = parse_lc_weights(v);
        if (!w) ctx.fail("expected AVERAGE or INSTANTANEOUS");
        cfg.mc.lc_weights = *w;
    } else if (key == "con_power") {
        const auto w = parse_con_power(v);
        if (!w) ctx.fail("expected PER_NODE or TOTAL_SPLIT");
        cfg.mc.con_power = *w;
    } else if (key == "axis") {
        const auto a = lower(v);
        if (a != "p0_db" && a != "d1" && a != "theta") ctx.fail("expected p0_db, d1 or theta");
        cfg.axis = a;
    } else if (key == "grid") {
        cfg.grid = ctx.numbers(v);
        cfg.grid_start = cfg.grid_stop = cfg.grid_step = std::nullopt;
    } else if (key == "grid_start") {
        cfg.grid_start = ctx.number(v);
    } else if (key == "grid_stop") {
        cfg.grid_stop = ctx.number(v);
    } else if (key == "grid_step") {
        const double s = ctx.number(v);
        if (!(s > 0)) ctx.fail("must be > 0");
        cfg.grid_step = s;
    } else if (key == "series") {
        cfg.series.clear();
        for (auto part : split(v, ',')) {
            if (part.empty()) ctx.fail("empty series entry");
            cfg.series.emplace_back(part);
        }
    } else if (key == "d2_complement") {
        if (lower(v) == "none" || v.empty()) {
            cfg.d2_complement.reset();
        } else {
            cfg.d2_complement = ctx.number(v);
        }
    } else if (key == "title") {
        cfg.title = std::string(v);
    } else {
        ctx.fail("unknown key");
    }
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("--set", 0, std::string(trim(assignment)), "expected key=value");
    }
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1), "--set", 0);
}

void parse_config_text(RunConfig& cfg, std::string_view text, const std::string& origin) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(origin, line_no, std::string(line), "expected 'key = value'");
        }
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), origin, line_no);
    }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file '" + path + "'");
    parse_config_text(cfg, buf.str(), path);
}

void finalize(RunConfig& cfg) {
    const bool any_range = cfg.grid_start || cfg.grid_stop || cfg.grid_step;
    if (any_range) {
        if (!(cfg.grid_start && cfg.grid_stop && cfg.grid_step)) {
            throw ValidationError("grid", "grid_start, grid_stop and grid_step must be given together");
        }
        const double a = *cfg.grid_start, b = *cfg.grid_stop, h = *cfg.grid_step;
        if (b < a) throw ValidationError("grid", "grid_stop must not be below grid_start");
        const double span = (b - a) / h;
        const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        if (n > 100000) throw ValidationError("grid", "more than 100000 points");
        cfg.grid.clear();
        for (std::size_t i = 0; i < n; ++i) {
            // snap to 12 decimals so 0.1-steps print as typed
            const double v = a + static_cast<double>(i) * h;
            cfg.grid.push_back(std::round(v * 1e12) / 1e12);
        }
    }
    for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
        if (!(cfg.grid[i] > cfg.grid[i - 1])) throw ValidationError("grid", "must be strictly increasing");
    }
    McConfig probe = cfg.mc;
    probe.params = cfg.params;
    validate(probe);
}

std::optional<std::string_view> preset_text(std::string_view name) {
    const auto n = lower(name);
    if (n == "p0_sweep") return kP0Sweep;
    if (n == "relay_position") return kRelayPosition;
    return std::nullopt;
}

}  // namespace swipt::cli
