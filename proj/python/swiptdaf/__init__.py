"""Bit-error analysis and Monte Carlo simulation of a power-splitting SWIPT
relay that forwards differentially encoded BPSK with a fixed amplify gain."""

from ._core import (
    AberPoint,
    ConPower,
    ConvergenceError,
    DegenerateConfigError,
    DerivedConstants,
    EhMode,
    LcWeights,
    McConfig,
    McResult,
    Method,
    Scheme,
    SwiptError,
    SystemParams,
    UnsupportedError,
    ValidationError,
    aber,
    aber_direct,
    aber_lc_asymptotic,
    aber_lc_exact,
    aber_th_asymptotic,
    aber_th_exact,
    baseline_variants,
    db_to_linear,
    derive_constants,
    linear_to_db,
    meijer_g,
    meijer_g_signed,
    pdf_two_hop_asymptotic,
    pdf_two_hop_asymptotic_quad,
    pdf_two_hop_exact,
    run_monte_carlo,
    run_monte_carlo_all,
    sample_two_hop_snr,
    two_hop_snr,
    validate,
)

__version__ = "0.1.0"


def params(**kwargs) -> SystemParams:
    """SystemParams with defaults, overridden by keyword."""
    return SystemParams(**kwargs)
