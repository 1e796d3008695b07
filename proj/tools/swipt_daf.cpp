#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swipt/cli/commands.hpp"
#include "swipt/cli/config.hpp"
#include "swipt/cli/sweep.hpp"
#include "swipt/errors.hpp"

namespace {

using namespace swipt;
using namespace swipt::cli;

struct Common {
    std::string config;
    std::string preset;
    std::vector<std::string> sets;
    std::string output;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("-c,--config", c.config, "key = value config file");
    sub->add_option("-p,--preset", c.preset, "built-in config: p0_sweep or relay_position");
    sub->add_option("-s,--set", c.sets, "override a config key, e.g. --set p0_db=20")->take_all();
    sub->add_option("-o,--output", c.output, "output file (default: stdout)");
}

RunConfig load(const Common& c) {
    RunConfig cfg;
    if (!c.preset.empty()) {
        const auto text = preset_text(c.preset);
        if (!text) throw ValidationError("preset", "unknown preset '" + c.preset + "'");
        parse_config_text(cfg, *text, "preset:" + c.preset);
    }
    if (!c.config.empty()) load_config_file(cfg, c.config);
    for (const auto& s : c.sets) apply_override(cfg, s);
    finalize(cfg);
    return cfg;
}

// Runs `body` against stdout or the requested file.
template <class Body>
int with_output(const std::string& path, Body body) {
    if (path.empty() || path == "-") return body(std::cout);
    std::ofstream out(path);
    if (!out) throw cli::IoError("cannot open '" + path + "' for writing");
    const int code = body(out);
    out.close();
    if (!out) throw cli::IoError("failed writing '" + path + "'");
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SWIPT differential amplify-and-forward relaying: ABER analysis and simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common common;
    bool with_mc = false;
    std::vector<double> z_points{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<double> reconcile_grid;
    std::string svg_path;

    auto* aber = app.add_subcommand("aber", "all analytic methods side by side at one point");
    add_common(aber, common);
    aber->add_flag("--mc", with_mc, "add Monte Carlo rows for the configured eh_mode");

    auto* pdf = app.add_subcommand("pdf", "two-hop SNR density: exact, closed high-SNR, high-SNR quadrature");
    add_common(pdf, common);
    pdf->add_option("-z,--z", z_points, "SNR points (comma separated)")->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "evaluate series over a grid and write CSV (and SVG)");
    add_common(sweep, common);
    sweep->add_option("--svg", svg_path, "also write a log-scale plot");

    auto* mc = app.add_subcommand("mc", "one Monte Carlo run for the configured scheme and eh_mode");
    add_common(mc, common);

    auto* reconcile = app.add_subcommand("reconcile", "printed closed forms against normative forms and quadrature");
    add_common(reconcile, common);
    reconcile->add_option("--grid", reconcile_grid, "P0 values in dB (default: config grid or 0..30 step 5)")
        ->delimiter(',');

    auto* selftest = app.add_subcommand("selftest", "run the identity and oracle corpus");

    auto* keys = app.add_subcommand("keys", "list config keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*keys) {
            for (const auto& k : known_keys()) std::cout << k << '\n';
            return kExitOk;
        }
        if (*selftest) return run_selftest(std::cout) ? kExitOk : kExitNumeric;

        const RunConfig cfg = load(common);
        if (*aber) {
            const auto r = aber_report(cfg, with_mc);
            return with_output(common.output, [&](std::ostream& out) {
                write_csv(out, r);
                return r.exit_code();
            });
        }
        if (*pdf) {
            return with_output(common.output, [&](std::ostream& out) { return write_pdf_table(out, cfg, z_points); });
        }
        if (*sweep) {
            const auto r = run_sweep(make_sweep_spec(cfg), cfg.mc.threads);
            int code = with_output(common.output, [&](std::ostream& out) {
                write_csv(out, r);
                return r.exit_code();
            });
            if (!svg_path.empty()) {
                with_output(svg_path, [&](std::ostream& out) {
                    write_svg(out, r);
                    return 0;
                });
            }
            for (const auto& row : r.rows) {
                if (row.status != RowStatus::Ok) {
                    std::cerr << "point failed: " << to_string(r.spec.axis) << "=" << format_number(row.axis_value)
                              << " " << row.series << " " << row.method << ": " << row.reason << '\n';
                }
            }
            return code;
        }
        if (*mc) {
            return with_output(common.output, [&](std::ostream& out) {
                write_mc_report(out, cfg);
                return kExitOk;
            });
        }
        if (*reconcile) {
            std::vector<double> grid = reconcile_grid;
            if (grid.empty()) grid = cfg.axis == "p0_db" ? cfg.grid : std::vector<double>{};
            if (grid.empty()) grid = {0, 5, 10, 15, 20, 25, 30};
            return with_output(common.output,
                               [&](std::ostream& out) { return write_reconcile_report(out, cfg.params, grid); });
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DegenerateConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitOk;
}
