"""Reduced-rank adaptive filtering with convex combinations, plus a DS-CDMA
downlink interference-suppression simulator.

Modules
-------
signalcore
    Hankel regressors, decimation patterns, interpolation.
filters
    Full-tap LMS and the reduced-rank interpolation/decimation/filtering
    (JIDF) LMS filter with per-step branch selection.
combiners
    Sigmoid convex combiners, the two-filter and four-filter tree schemes,
    and the combined full-tap LMS baseline.
cdma
    Downlink signal model: signatures, fading channel, received windows,
    clairvoyant MMSE receiver, QPSK slicer.
harness
    Seeded Monte-Carlo BER experiments, SNR sweeps, complexity reports,
    CSV output, and the ``rrfilt`` command-line entry point.
"""

from .cdma import (
    CdmaConfig,
    ClarkeChannel,
    MmseReceiver,
    build_convolution_matrix,
    detect_qpsk,
    generate_received,
    generate_signatures,
    mmse_filter,
    qpsk_symbols,
)
from .combiners import (
    Clms,
    CombinedStep,
    Combiner,
    SchemeA,
    SchemeB,
    equivalent_filter_scheme_a,
    equivalent_filter_scheme_b,
    sigmoid,
)
from .filters import FullRankLms, JidfFilter, StepResult
from .harness import (
    BranchParams,
    CombinerSteps,
    ConfigError,
    ExperimentConfig,
    ExperimentRecord,
    complexity_report,
    load_config,
    run_experiment,
    snr_sweep,
    write_csv,
    write_sweep_csv,
)
from .signalcore import (
    DecimationPattern,
    apply_decimation,
    build_hankel,
    generate_decimation_patterns,
    interpolate,
    interpolation_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BranchParams",
    "CdmaConfig",
    "ClarkeChannel",
    "Clms",
    "CombinedStep",
    "Combiner",
    "CombinerSteps",
    "ConfigError",
    "DecimationPattern",
    "ExperimentConfig",
    "ExperimentRecord",
    "FullRankLms",
    "JidfFilter",
    "MmseReceiver",
    "SchemeA",
    "SchemeB",
    "StepResult",
    "apply_decimation",
    "build_convolution_matrix",
    "build_hankel",
    "complexity_report",
    "detect_qpsk",
    "equivalent_filter_scheme_a",
    "equivalent_filter_scheme_b",
    "generate_decimation_patterns",
    "generate_received",
    "generate_signatures",
    "interpolate",
    "interpolation_matrix",
    "load_config",
    "mmse_filter",
    "qpsk_symbols",
    "run_experiment",
    "sigmoid",
    "snr_sweep",
    "write_csv",
    "write_sweep_csv",
]
