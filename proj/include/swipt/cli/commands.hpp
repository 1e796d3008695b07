#pragma once

#include <iosfwd>
#include <vector>

#include "swipt/cli/config.hpp"
#include "swipt/cli/sweep.hpp"

namespace swipt::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitNumeric = 2,
    kExitIo = 3,
};

/// Every method for TH, LC and the direct link at the configured point,
/// plus Monte Carlo rows for TH, LC and DIRECT when `with_mc`. Same CSV
/// schema as a sweep with a one-point P0_dB axis.
SweepResult aber_report(const RunConfig& cfg, bool with_mc);

/// z,exact,asymptotic,asymptotic_quad table. Per-point failures leave the
/// cell empty; returns the exit code.
int write_pdf_table(std::ostream& out, const RunConfig& cfg, const std::vector<double>& z);

/// One-row CSV of a Monte Carlo run for cfg.scheme and cfg.mc.eh_mode.
void write_mc_report(std::ostream& out, const RunConfig& cfg);

/// Printed-versus-normative-versus-quadrature table over a P0 grid (dB),
/// preceded by the sign note. Failures are recorded in the table.
int write_reconcile_report(std::ostream& out, const SystemParams& base, const std::vector<double>& p0_db);

/// Identity and oracle corpus; one PASS/FAIL line per check. True when all pass.
bool run_selftest(std::ostream& out);

}  // namespace swipt::cli
