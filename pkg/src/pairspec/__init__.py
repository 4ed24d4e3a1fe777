"""Frequency-dispersed transmission of shaped pulses through a coupled pair
of two-level emitters: closed-form signals, quadrature cross-checks, grid
scans, and a reproducible CLI."""

from .coefficients import CoefficientOptions, CoefficientTable, coeff_A, coeff_B
from .model import (
    ConfigurationError,
    GridError,
    PairSystem,
    PhaseProfile,
    PoleProximityError,
    PulseConfig,
    SignalSample,
    TwoLevelAtom,
    default_config,
    load_config,
    save_config,
    validate,
)
from .oracle import QuadratureError, QuadratureSpec, quad_signal, run_comparison
from .scan import (
    Ridge,
    RidgeReport,
    ScanGrid,
    distance_sweep,
    find_extrema,
    ridge_detect,
    scan_1d,
    scan_2d,
)
from .signal import SignalRequest, residue_signal, signal_SI, signal_SII, signal_total

__version__ = "0.1.0"

__all__ = [
    "CoefficientOptions",
    "CoefficientTable",
    "ConfigurationError",
    "GridError",
    "PairSystem",
    "PhaseProfile",
    "PoleProximityError",
    "PulseConfig",
    "QuadratureError",
    "QuadratureSpec",
    "Ridge",
    "RidgeReport",
    "ScanGrid",
    "SignalRequest",
    "SignalSample",
    "TwoLevelAtom",
    "coeff_A",
    "coeff_B",
    "default_config",
    "distance_sweep",
    "find_extrema",
    "load_config",
    "quad_signal",
    "residue_signal",
    "ridge_detect",
    "run_comparison",
    "save_config",
    "scan_1d",
    "scan_2d",
    "signal_SI",
    "signal_SII",
    "signal_total",
    "validate",
    "__version__",
]
