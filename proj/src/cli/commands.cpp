#include "swipt/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>

#include "swipt/errors.hpp"
#include "swipt/numquad.hpp"
#include "swipt/specfun.hpp"

namespace swipt::cli {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string params_line(const SystemParams& p) {
    return "eta=" + fmt("%.10g", p.eta) + " theta=" + fmt("%.10g", p.theta) + " alpha=" + fmt("%.10g", p.alpha) +
           " d0=" + fmt("%.10g", p.d0) + " d1=" + fmt("%.10g", p.d1) + " d2=" + fmt("%.10g", p.d2) +
           " n0a=" + fmt("%.10g", p.n0a) + " n0c=" + fmt("%.10g", p.n0c) + " n1a=" + fmt("%.10g", p.n1a) +
           " n1c=" + fmt("%.10g", p.n1c) + " n2a=" + fmt("%.10g", p.n2a) + " n2c=" + fmt("%.10g", p.n2c);
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct Check {
    std::ostream& out;
    bool all = true;

    void report(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        all = all && ok;
    }

    // a throwing check fails instead of aborting the corpus
    void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
        try {
            const auto [ok, detail] = fn();
            report(ok, name, detail);
        } catch (const std::exception& e) {
            report(false, name, std::string("threw: ") + e.what());
        }
    }
};

}  // namespace

SweepResult aber_report(const RunConfig& cfg, bool with_mc) {
    RunConfig c = cfg;
    c.axis = "p0_db";
    c.grid = {linear_to_db(cfg.params.p0)};
    c.grid_start = c.grid_stop = c.grid_step = std::nullopt;
    c.d2_complement.reset();
    c.series.clear();
    for (const char* scheme : {"TH", "LC"}) {
        for (const char* method : {"EXACT_QUAD", "ASYMPTOTIC_CLOSED", "ASYMPTOTIC_QUAD"}) {
            c.series.push_back(std::string("IEH-") + scheme + ":" + method);
        }
    }
    c.series.emplace_back("IEH-DIRECT:EXACT_QUAD");
    if (with_mc) {
        const std::string eh(to_string(cfg.mc.eh_mode));
        for (const char* scheme : {"TH", "LC", "DIRECT"}) c.series.push_back(eh + "-" + scheme + ":MC");
    }
    auto r = run_sweep(make_sweep_spec(c), cfg.mc.threads);
    for (auto& [k, v] : r.metadata) {
        if (k == "command") v = "aber";
    }
    return r;
}

int write_pdf_table(std::ostream& out, const RunConfig& cfg, const std::vector<double>& z) {
    const auto c = derive_constants(cfg.params);
    out << "# tool: swipt_daf " << kVersion << "\n# command: pdf\n# p0: " << format_number(cfg.params.p0) << " ("
        << format_number(linear_to_db(cfg.params.p0)) << " dB)\n# params: " << params_line(cfg.params) << '\n';
    out << "z,exact,asymptotic,asymptotic_quad\n";
    int code = kExitOk;
    for (double zi : z) {
        out << format_number(zi);
        for (auto f : {&pdf_two_hop_exact, &pdf_two_hop_asymptotic, &pdf_two_hop_asymptotic_quad}) {
            out << ',';
            try {
                out << format_number(f(c, zi));
            } catch (const ValidationError&) {
                code = kExitValidation;
            } catch (const Error&) {
                if (code == kExitOk) code = kExitNumeric;
            }
        }
        out << '\n';
    }
    return code;
}

void write_mc_report(std::ostream& out, const RunConfig& cfg) {
    McConfig m = cfg.mc;
    m.params = cfg.params;
    m.scheme = cfg.scheme;
    const auto r = run_monte_carlo(m);
    out << "# tool: swipt_daf " << kVersion << "\n# command: mc\n# p0: " << format_number(cfg.params.p0) << " ("
        << format_number(linear_to_db(cfg.params.p0)) << " dB)\n# params: " << params_line(cfg.params)
        << "\n# frames=" << m.frames << " symbols_per_frame=" << m.symbols_per_frame
        << " min_errors=" << m.min_errors << " lc_weights=" << to_string(m.lc_weights)
        << " con_power=" << to_string(m.con_power) << '\n';
    out << "scheme,eh_mode,ber,errors,bits,ci95_halfwidth,seed,frames_run\n";
    out << to_string(m.scheme) << ',' << to_string(m.eh_mode) << ',' << format_number(r.ber) << ',' << r.errors
        << ',' << r.bits << ',' << format_number(r.ci95_halfwidth) << ',' << r.seed << ',' << r.frames_run << '\n';
}

int write_reconcile_report(std::ostream& out, const SystemParams& base, const std::vector<double>& p0_db) {
    out << "# Printed closed forms against the normative forms\n\n" << kJ2SignNote << "\n\n";
    out << "Parameters: " << params_line(base) << "\n\n";
    out << "Columns: `quad` integrates the high-SNR pdf numerically; `norm` is the normative closed form; "
           "`printed` evaluates the printed expression literally at the negative argument j1/j2; "
           "`abs-j2` is the printed expression with j2 replaced by -j2.\n\n";
    out << "| P0_dB | j1 | j2 | TH quad | TH norm | TH norm/quad | TH printed | TH abs-j2/norm | 2sqrt(pi)/j1 "
           "| LC quad | LC norm | LC norm/quad | LC printed | LC abs-j2/norm |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    int code = kExitOk;
    const auto cx = [](std::complex<double> z) {
        return format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_number(std::abs(z.imag())) + "i";
    };
    for (double db : p0_db) {
        SystemParams p = base;
        p.p0 = db_to_linear(db);
        out << "| " << format_number(db) << " | ";
        try {
            const auto a = reconcile_printed_forms(derive_constants(p));
            out << format_number(a.j1) << " | " << format_number(a.j2) << " | " << format_number(a.th_quad) << " | "
                << format_number(a.th_normative) << " | " << fmt("%.12f", a.th_normative_over_quad()) << " | "
                << cx(a.th_printed) << " | " << format_number(a.th_abs_j2_over_normative()) << " | "
                << format_number(2.0 * std::sqrt(std::numbers::pi) / a.j1) << " | " << format_number(a.lc_quad)
                << " | " << format_number(a.lc_normative) << " | " << fmt("%.12f", a.lc_normative_over_quad())
                << " | " << cx(a.lc_printed) << " | " << format_number(a.lc_abs_j2_over_normative()) << " |\n";
        } catch (const ValidationError& e) {
            out << "failed: " << e.what() << " |\n";
            code = kExitValidation;
        } catch (const Error& e) {
            out << "failed: " << e.what() << " |\n";
            if (code == kExitOk) code = kExitNumeric;
        }
    }
    return code;
}

bool run_selftest(std::ostream& out) {
    Check ck{out};
    const double sqrt_pi = std::sqrt(std::numbers::pi);

    ck.run("quad: int exp(-t) over (0,inf) = 1", [] {
        const auto r = integrate_semi_infinite([](double t) { return std::exp(-t); });
        return std::pair{r.converged && std::abs(r.value - 1.0) < 1e-9, fmt("%.16g", r.value)};
    });
    ck.run("quad: int t exp(-t^2) over (0,inf) = 1/2", [] {
        const auto r = integrate_semi_infinite([](double t) { return t * std::exp(-t * t); });
        return std::pair{r.converged && std::abs(r.value - 0.5) < 1e-9, fmt("%.16g", r.value)};
    });
    ck.run("contour: int exp(-tau^2) over R = sqrt(pi)", [&] {
        const auto r = integrate_contour([](double t) { return std::complex<double>(std::exp(-t * t), 0); });
        return std::pair{r.converged && std::abs(r.value.real() - sqrt_pi) < 1e-9, fmt("%.16g", r.value.real())};
    });
    ck.run("log-gamma: real axis against lgamma", [] {
        double worst = 0;
        for (double x = 0.05; x < 60; x *= 1.37) {
            worst = std::max(worst, std::abs(log_gamma({x, 0}).real() - std::lgamma(x)) / std::max(1.0, std::abs(std::lgamma(x))));
        }
        return std::pair{worst < 1e-13, "max rel err " + fmt("%.2e", worst)};
    });
    ck.run("meijer: G^{1,0}_{0,1}(x|-;0) = exp(-x) on [1e-3, 1e3]", [] {
        const auto spec = MeijerGSpec::make(1, 0, {}, {0.0});
        double worst = 0;
        for (int i = 0; i <= 24; ++i) {
            const double x = std::pow(10.0, -3.0 + 0.25 * i);
            const auto g = meijer_g_scaled(spec, x);
            // compare logs so e^{-1000} is still checked to relative precision
            const double err = g.mantissa > 0 ? std::abs(g.log_abs() + x) : INFINITY;
            worst = std::max(worst, err);
        }
        return std::pair{worst < 1e-9, "max rel err " + fmt("%.2e", worst)};
    });
    ck.run("meijer: G^{2,0}_{0,2}(x|-;b,b) = 2 x^b K0(2 sqrt x)", [] {
        double worst = 0;
        for (double beta : {0.0, 0.3}) {
            const auto spec = MeijerGSpec::make(2, 0, {}, {beta, beta});
            for (int i = 0; i <= 12; ++i) {
                const double x = std::pow(10.0, -3.0 + 0.5 * i);
                const double ref = 2.0 * std::pow(x, beta) * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(x));
                worst = std::max(worst, rel_diff(meijer_g(spec, x), ref));
            }
        }
        return std::pair{worst < 1e-9, "max rel err " + fmt("%.2e", worst)};
    });
    const auto c10 = derive_constants(SystemParams{});
    ck.run("pdf: exact two-hop pdf integrates to 1", [&] {
        QuadratureSettings s;
        s.rel_tol = 1e-8;
        const auto r = integrate_semi_infinite([&](double z) { return pdf_two_hop_exact(c10, z); }, s);
        return std::pair{std::abs(r.value - 1.0) < 1e-4, fmt("%.12f", r.value)};
    });
    ck.run("pdf: closed high-SNR pdf equals its integral form", [&] {
        double worst = 0;
        for (double z : {0.01, 0.3, 1.0, 5.0, 30.0}) {
            worst = std::max(worst, rel_diff(pdf_two_hop_asymptotic(c10, z), pdf_two_hop_asymptotic_quad(c10, z)));
        }
        return std::pair{worst < 1e-6, "max rel diff " + fmt("%.2e", worst)};
    });
    for (double p0 : {10.0, 100.0}) {
        SystemParams p;
        p.p0 = p0;
        const auto c = derive_constants(p);
        ck.run("aber: closed forms equal kernel quadrature at P0=" + fmt("%g", p0), [&] {
            const double th = rel_diff(aber_th_asymptotic(c).value, aber_th_asymptotic_quad(c).value);
            const double lc = rel_diff(aber_lc_asymptotic(c).value, aber_lc_asymptotic_quad(c).value);
            return std::pair{th < 1e-6 && lc < 1e-6, "TH " + fmt("%.2e", th) + ", LC " + fmt("%.2e", lc)};
        });
    }
    ck.run("aber: direct link = 1/(2(1+gbar0))", [&] {
        const double v = aber_direct(c10).value;
        return std::pair{std::abs(v - 1.0 / 22.0) < 1e-15, fmt("%.16g", v)};
    });
    ck.run("mc: direct-link BER within 3 ci95 of 1/22", [] {
        McConfig m;
        m.scheme = Scheme::DirectOnly;
        m.frames = 200000;
        m.symbols_per_frame = 2;
        m.seed = 11;
        const auto r = run_monte_carlo(m);
        return std::pair{std::abs(r.ber - 1.0 / 22.0) <= 3 * r.ci95_halfwidth,
                         fmt("%.6f", r.ber) + " +- " + fmt("%.6f", r.ci95_halfwidth)};
    });
    out << (ck.all ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return ck.all;
}

}  // namespace swipt::cli
