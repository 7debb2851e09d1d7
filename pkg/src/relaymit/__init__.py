"""Achievable rates for a relay link whose source knows the interfering codeword.

The library evaluates, for a Gaussian relay channel whose source-relay band
is orthogonal to the relay-destination band and whose channel carries a
codeword from an interfering transmitter that the source knows, the rates of
a family of interference-mitigation strategies: ignore-or-precode baselines,
decoded interference sharing, compressed (quantized) interference sharing
with structured or unstructured destinations, analog input description, and
a lattice-based decode-forward reference. Fixed-gain evaluators live in
:mod:`relaymit.awgn`; ergodic Ricean-fading counterparts (Monte Carlo over
seeded sample batches) live in :mod:`relaymit.fading`; parameter sweeps, the
named presets, and CSV output live in :mod:`relaymit.experiments`.
"""

from .awgn import (
    AWGN_OPT_CFG,
    DerivedQuantities,
    c_srd_prime,
    capacity_special,
    derived_quantities,
    rate_aid,
    rate_cs1,
    rate_cs2,
    rate_cu,
    rate_du,
    rate_ni,
    rate_nldf,
    rate_nr,
    scheme_program,
)
from .core import (
    ChannelGains,
    DomainError,
    PowerBudget,
    RateResult,
    SplitPowerBudget,
    cap_fn,
    db_to_linear,
    linear_to_db,
    pos_part,
)
from .experiments import (
    AWGN_SCHEMES,
    FADING_SCHEMES,
    KNOWN_SCHEMES,
    MULTIHOP_ONLY_SCHEMES,
    ConfigError,
    CsvRow,
    FigurePreset,
    PRESETS,
    SweepSpec,
    emit_csv,
    emit_plot,
    evaluate_scheme,
    figure_preset,
    parse_config,
    run_sweep,
    sweep_points,
)
from .fading import (
    FADING_OPT_CFG,
    FadingSpec,
    GainSampleBatch,
    MonteCarloCfg,
    fading_program,
    mc_expectation,
    mc_standard_error,
    rate_fading_aid,
    rate_fading_cs1,
    rate_fading_cs2,
    rate_fading_cu,
    rate_fading_ds,
    rate_fading_du,
    rate_fading_ni_multihop,
    rate_fading_p2p_s,
    rate_fading_p2p_u,
    sample_batch,
    sample_ricean,
)
from .optimize import (
    Dim,
    InfeasibleSpaceError,
    OptimizerConfig,
    ParamSpace,
    SchemeParams,
    feasible,
    maximize,
    project,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "DomainError",
    "ChannelGains",
    "PowerBudget",
    "SplitPowerBudget",
    "RateResult",
    "cap_fn",
    "pos_part",
    "db_to_linear",
    "linear_to_db",
    # optimizer
    "Dim",
    "ParamSpace",
    "OptimizerConfig",
    "SchemeParams",
    "InfeasibleSpaceError",
    "maximize",
    "feasible",
    "project",
    # fixed-gain schemes
    "AWGN_OPT_CFG",
    "DerivedQuantities",
    "rate_nr",
    "rate_ni",
    "rate_du",
    "rate_cu",
    "rate_cs1",
    "rate_cs2",
    "rate_aid",
    "rate_nldf",
    "c_srd_prime",
    "capacity_special",
    "derived_quantities",
    "scheme_program",
    # fading schemes
    "FADING_OPT_CFG",
    "FadingSpec",
    "MonteCarloCfg",
    "GainSampleBatch",
    "sample_ricean",
    "sample_batch",
    "mc_expectation",
    "mc_standard_error",
    "fading_program",
    "rate_fading_p2p_u",
    "rate_fading_p2p_s",
    "rate_fading_du",
    "rate_fading_ds",
    "rate_fading_cu",
    "rate_fading_cs1",
    "rate_fading_cs2",
    "rate_fading_aid",
    "rate_fading_ni_multihop",
    # experiments
    "AWGN_SCHEMES",
    "FADING_SCHEMES",
    "KNOWN_SCHEMES",
    "MULTIHOP_ONLY_SCHEMES",
    "ConfigError",
    "SweepSpec",
    "FigurePreset",
    "CsvRow",
    "PRESETS",
    "figure_preset",
    "evaluate_scheme",
    "run_sweep",
    "sweep_points",
    "emit_csv",
    "emit_plot",
    "parse_config",
]
