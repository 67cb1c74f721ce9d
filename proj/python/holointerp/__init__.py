"""Python bindings for the holointerp core library."""

from ._core import (
    AnalyticMap,
    ConfigError,
    DomainError,
    Extraction,
    HypothesisViolation,
    InvalidArgument,
    OracleMap,
    StripFunction,
    VerificationReport,
    WeightedCouple,
    constant_weights,
    default_theta_grid,
    extract_component,
    f_space_norm,
    geometric_weights,
    lemma_bound,
    normalize_couple,
    optimal_strip_function,
    run_config,
    sobolev_weights,
    theorem1_bound,
    theta_norm,
    truncated_series,
    verify_lemma,
    verify_theorem1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
