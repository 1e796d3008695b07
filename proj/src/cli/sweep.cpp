#include "swipt/cli/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

#include "swipt/errors.hpp"
#include "swipt/parallel.hpp"

namespace swipt::cli {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

std::string trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

const std::set<std::string>& override_keys() {
    static const std::set<std::string> keys = {"p0",  "p0_db", "eta", "theta", "alpha", "d0",  "d1",  "d2",
                                               "n0a", "n0c",   "n1a", "n1c",   "n2a",   "n2c", "noise"};
    return keys;
}

std::string exact_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

bool overrides_axis(Axis axis, const std::string& key, bool complement) {
    switch (axis) {
        case Axis::P0_dB: return key == "p0" || key == "p0_db";
        case Axis::D1: return key == "d1" || (complement && key == "d2");
        case Axis::Theta: return key == "theta";
    }
    return false;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Axis a) noexcept {
    switch (a) {
        case Axis::P0_dB: return "P0_dB";
        case Axis::D1: return "d1";
        case Axis::Theta: return "theta";
    }
    return "?";
}

std::string_view to_string(RowStatus s) noexcept {
    switch (s) {
        case RowStatus::Ok: return "ok";
        case RowStatus::Validation: return "validation";
        case RowStatus::Degenerate: return "degenerate";
        case RowStatus::NonConvergence: return "nonconvergence";
        case RowStatus::Unsupported: return "unsupported";
    }
    return "?";
}

std::string SeriesSpec::method_name() const { return method ? std::string(to_string(*method)) : "MC"; }

SeriesSpec parse_series(std::string_view text) {
    const std::string t = trimmed(text);
    const auto fail = [&](const std::string& what) -> SeriesSpec {
        throw ValidationError("series", "'" + t + "': " + what);
    };
    const auto colon = t.find(':');
    if (colon == std::string::npos) return fail("expected <EH>-<SCHEME>:<METHOD>");
    const std::string head = upper(trimmed(std::string_view(t).substr(0, colon)));
    std::string tail = std::string(std::string_view(t).substr(colon + 1));

    SeriesSpec s;
    const auto dash = head.find('-');
    if (dash == std::string::npos) return fail("expected <EH>-<SCHEME> before ':'");
    const auto eh = parse_eh_mode(head.substr(0, dash));
    if (!eh) return fail("unknown EH mode '" + head.substr(0, dash) + "'");
    const auto scheme = parse_scheme(head.substr(dash + 1));
    if (!scheme) return fail("unknown scheme '" + head.substr(dash + 1) + "'");
    s.eh_mode = *eh;
    s.scheme = *scheme;

    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto at = tail.find('@', start);
        parts.push_back(trimmed(std::string_view(tail).substr(start, at == std::string::npos ? at : at - start)));
        if (at == std::string::npos) break;
        start = at + 1;
    }
    const std::string method = upper(parts.front());
    if (method != "MC") {
        const auto m = parse_method(method);
        if (!m) return fail("unknown method '" + parts.front() + "'");
        s.method = *m;
    }
    s.label = std::string(to_string(s.eh_mode)) + "-" +
              (s.scheme == Scheme::DirectOnly ? std::string("DIRECT") : std::string(to_string(s.scheme)));
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) return fail("override '" + parts[i] + "' is not key=value");
        std::string key = trimmed(std::string_view(parts[i]).substr(0, eq));
        for (auto& ch : key) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (!override_keys().contains(key)) return fail("'" + key + "' cannot be overridden per series");
        RunConfig probe;
        apply_setting(probe, key, std::string_view(parts[i]).substr(eq + 1), "series", 0);
        // keep the parsed number; apply_setting already rejected junk
        double v = 0;
        const std::string raw = trimmed(std::string_view(parts[i]).substr(eq + 1));
        std::from_chars(raw.data(), raw.data() + raw.size(), v);
        s.overrides.emplace_back(key, v);
        s.label += "@" + key + "=" + raw;
    }
    if (s.method && s.eh_mode != EhMode::IEH && s.scheme != Scheme::DirectOnly) {
        return fail("analytic methods cover IEH only; use MC for AEH and CON");
    }
    return s;
}

SweepSpec make_sweep_spec(const RunConfig& cfg) {
    SweepSpec s;
    if (cfg.axis == "p0_db") {
        s.axis = Axis::P0_dB;
    } else if (cfg.axis == "d1") {
        s.axis = Axis::D1;
    } else if (cfg.axis == "theta") {
        s.axis = Axis::Theta;
    } else {
        throw ValidationError("axis", "expected p0_db, d1 or theta");
    }
    s.grid = cfg.grid;
    if (s.grid.empty()) throw ValidationError("grid", "sweep grid is empty");
    for (std::size_t i = 1; i < s.grid.size(); ++i) {
        if (!(s.grid[i] > s.grid[i - 1])) throw ValidationError("grid", "must be strictly increasing");
    }
    s.fixed = cfg.params;
    s.mc = cfg.mc;
    s.d2_complement = cfg.d2_complement;
    s.title = cfg.title;
    if (s.d2_complement && s.axis != Axis::D1) {
        throw ValidationError("d2_complement", "only meaningful on the d1 axis");
    }
    if (cfg.series.empty()) throw ValidationError("series", "no series given");
    for (const auto& text : cfg.series) {
        auto series = parse_series(text);
        for (const auto& [key, v] : series.overrides) {
            if (overrides_axis(s.axis, key, s.d2_complement.has_value())) {
                throw ValidationError("series", "'" + text + "' overrides the swept field '" + key + "'");
            }
        }
        s.series.push_back(std::move(series));
    }
    if (s.axis == Axis::D1 && s.d2_complement) {
        for (double d1 : s.grid) {
            if (!(*s.d2_complement - d1 > 0)) throw ValidationError("grid", "d2 = d2_complement - d1 must stay > 0");
        }
    }
    return s;
}

SystemParams point_params(const SweepSpec& spec, const SeriesSpec& series, double axis_value) {
    RunConfig tmp;
    tmp.params = spec.fixed;
    for (const auto& [key, v] : series.overrides) apply_setting(tmp, key, exact_text(v), "series", 0);
    SystemParams p = tmp.params;
    switch (spec.axis) {
        case Axis::P0_dB: p.p0 = db_to_linear(axis_value); break;
        case Axis::D1:
            p.d1 = axis_value;
            if (spec.d2_complement) p.d2 = *spec.d2_complement - axis_value;
            break;
        case Axis::Theta: p.theta = axis_value; break;
    }
    return p;
}

SweepRow evaluate_point(const SweepSpec& spec, const SeriesSpec& series, double axis_value, unsigned mc_threads) {
    SweepRow row;
    row.axis_value = axis_value;
    row.series = series.label;
    row.method = series.method_name();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SystemParams p = point_params(spec, series, axis_value);
        if (series.method) {
            validate(p);
            if (series.scheme == Scheme::DirectOnly) {
                // the direct link needs no relay constants, so theta in {0, 1} is fine here
                DerivedConstants c;
                c.params = p;
                c.gbar0 = p.p0 * std::pow(p.d0, -p.alpha) / (p.n0a + p.n0c);
                const auto pt = aber_direct(c);
                row.value = pt.value;
                row.error = pt.err_estimate;
            } else {
                const auto pt = aber(derive_constants(p), series.scheme, *series.method);
                row.value = pt.value;
                row.error = pt.err_estimate;
            }
        } else {
            McConfig m = spec.mc;
            m.params = p;
            m.scheme = series.scheme;
            m.eh_mode = series.eh_mode;
            m.threads = mc_threads;
            const auto r = run_monte_carlo(m);
            row.value = r.ber;
            row.error = r.ci95_halfwidth;
            row.seed = r.seed;
        }
    } catch (const DegenerateConfigError& e) {
        row.status = RowStatus::Degenerate;
        row.reason = e.what();
    } catch (const ValidationError& e) {
        row.status = RowStatus::Validation;
        row.reason = e.what();
    } catch (const ConvergenceError& e) {
        row.status = RowStatus::NonConvergence;
        row.reason = e.what();
    } catch (const UnsupportedError& e) {
        row.status = RowStatus::Unsupported;
        row.reason = e.what();
    }
    if (row.status != RowStatus::Ok) {
        row.value.reset();
        row.error = 0;
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

bool SweepResult::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == RowStatus::Ok; });
}

int SweepResult::exit_code() const {
    int code = 0;
    for (const auto& r : rows) {
        if (r.status == RowStatus::Validation || r.status == RowStatus::Degenerate) return 1;
        if (r.status != RowStatus::Ok) code = 2;
    }
    return code;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    if (spec.grid.empty()) throw ValidationError("grid", "sweep grid is empty");
    if (spec.series.empty()) throw ValidationError("series", "no series given");
    SweepResult r;
    r.spec = spec;
    const std::size_t ns = spec.series.size();
    r.rows.resize(spec.grid.size() * ns);
    const unsigned workers = resolve_threads(threads);
    // a lone worker may as well hand its threads to the simulator
    const unsigned mc_threads = workers == 1 ? threads : 1;
    parallel_for(r.rows.size(), workers, [&](std::size_t j) {
        r.rows[j] = evaluate_point(spec, spec.series[j % ns], spec.grid[j / ns], mc_threads);
    });

    const auto& p = spec.fixed;
    auto& md = r.metadata;
    md.emplace_back("tool", "swipt_daf " + std::string(kVersion));
    md.emplace_back("command", "sweep");
    if (!spec.title.empty()) md.emplace_back("title", spec.title);
    md.emplace_back("axis", std::string(to_string(spec.axis)));
    md.emplace_back("points", std::to_string(spec.grid.size()) + " x " + std::to_string(ns) + " series");
    md.emplace_back("params", "p0=" + short_text(p.p0) + " eta=" + short_text(p.eta) + " theta=" +
                                  short_text(p.theta) + " alpha=" + short_text(p.alpha) + " d0=" +
                                  short_text(p.d0) + " d1=" + short_text(p.d1) + " d2=" + short_text(p.d2));
    md.emplace_back("noise", "n0a=" + short_text(p.n0a) + " n0c=" + short_text(p.n0c) + " n1a=" +
                                 short_text(p.n1a) + " n1c=" + short_text(p.n1c) + " n2a=" + short_text(p.n2a) +
                                 " n2c=" + short_text(p.n2c));
    if (spec.d2_complement) md.emplace_back("d2", "d2_complement - d1 with d2_complement=" + short_text(*spec.d2_complement));
    md.emplace_back("mc", "seed=" + std::to_string(spec.mc.seed) + " frames=" + std::to_string(spec.mc.frames) +
                              " symbols_per_frame=" + std::to_string(spec.mc.symbols_per_frame) +
                              " min_errors=" + std::to_string(spec.mc.min_errors) +
                              " lc_weights=" + std::string(to_string(spec.mc.lc_weights)) +
                              " con_power=" + std::string(to_string(spec.mc.con_power)));
    md.emplace_back("tolerances", "pdf rel 1e-9; ABER inner rel 1e-11, outer rel 1e-10; Meijer-G contour rel 1e-12");
    md.emplace_back("error_column", "absolute numeric error bound (analytic) or 95% half-width (MC)");
    return r;
}

std::string format_number(double v) {
    char buf[40];
    if (v != 0 && std::abs(v) < 1e-3) {
        std::snprintf(buf, sizeof buf, "%.9e", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.12g", v);
    }
    return buf;
}

void write_csv(std::ostream& out, const SweepResult& r) {
    for (const auto& [k, v] : r.metadata) out << "# " << k << ": " << v << '\n';
    for (const auto& row : r.rows) {
        if (row.status != RowStatus::Ok) {
            out << "# failed: " << to_string(r.spec.axis) << "=" << format_number(row.axis_value) << " "
                << row.series << " " << row.method << ": " << row.reason << '\n';
        }
    }
    out << kCsvHeader << '\n';
    for (const auto& row : r.rows) {
        out << to_string(r.spec.axis) << ',' << format_number(row.axis_value) << ',' << row.series << ','
            << row.method << ',' << (row.value ? format_number(*row.value) : "") << ','
            << (row.value ? format_number(row.error) : "") << ',' << (row.seed ? std::to_string(*row.seed) : "")
            << ',' << to_string(row.status) << ',' << format_number(row.wall_seconds) << '\n';
    }
}

void write_svg(std::ostream& out, const SweepResult& r) {
    constexpr double W = 860, H = 540, left = 80, right = 250, top = 50, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;

    // curves keyed by series and method, in first-seen order
    std::vector<std::string> keys;
    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    std::map<std::string, bool> is_mc;
    double ymin = INFINITY, ymax = -INFINITY;
    for (const auto& row : r.rows) {
        const std::string key = row.series + " " + row.method;
        if (!curves.contains(key)) {
            keys.push_back(key);
            curves[key];
            is_mc[key] = row.method == "MC";
        }
        if (row.value && *row.value > 0) {
            curves[key].emplace_back(row.axis_value, *row.value);
            ymin = std::min(ymin, *row.value);
            ymax = std::max(ymax, *row.value);
        }
    }
    if (!(ymin <= ymax)) {
        ymin = 1e-3;
        ymax = 1;
    }
    const double ly0 = std::floor(std::log10(ymin)), ly1 = std::max(ly0 + 1, std::ceil(std::log10(ymax)));
    const double x0 = r.spec.grid.front(), x1 = r.spec.grid.size() > 1 ? r.spec.grid.back() : x0 + 1;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

    static constexpr std::array<const char*, 10> colors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!r.spec.title.empty()) {
        out << "<text x=\"" << left + pw / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
            << xml_escape(r.spec.title) << "</text>\n";
    }
    for (double e = ly0; e <= ly1; e += 1) {
        const double y = py(std::pow(10.0, e));
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%d</text>\n",
                      left, y, left + pw, y, left - 6, y + 4, static_cast<int>(e));
        out << buf;
    }
    const std::size_t stride = std::max<std::size_t>(1, r.spec.grid.size() / 10);
    for (std::size_t i = 0; i < r.spec.grid.size(); i += stride) {
        const double x = px(r.spec.grid[i]);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#eee\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                      x, top, x, top + ph, x, top + ph + 18, format_number(r.spec.grid[i]).c_str());
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, pw, ph);
    out << buf;
    out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
        << xml_escape(std::string(to_string(r.spec.axis))) << "</text>\n";
    out << "<text transform=\"translate(22," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">ABER</text>\n";

    for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto& pts = curves[keys[k]];
        const char* color = colors[k % colors.size()];
        if (is_mc[keys[k]]) {
            for (const auto& [x, y] : pts) {
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"none\" stroke=\"%s\"/>\n",
                              px(x), py(y), color);
                out << buf;
            }
        } else if (!pts.empty()) {
            out << "<polyline fill=\"none\" stroke-width=\"1.6\" stroke=\"" << color << "\" points=\"";
            for (const auto& [x, y] : pts) {
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
                out << buf;
            }
            out << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        const double lx = left + pw + 16;
        if (is_mc[keys[k]]) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.5\" fill=\"none\" stroke=\"%s\"/>\n",
                          lx + 12, ly, color);
        } else {
            std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" stroke-width=\"1.6\"/>\n",
                          lx, ly, lx + 24, ly, color);
        }
        out << buf;
        out << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << xml_escape(keys[k]) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace swipt::cli
