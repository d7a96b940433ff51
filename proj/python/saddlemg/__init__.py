"""Multigrid for circulant and Toeplitz saddle-point systems."""

from ._core import (
    Divergence,
    HypothesisFailure,
    InvalidArgument,
    TrigPoly,
    UnboundedRatio,
    analyze,
    elasticity_symbols,
    galerkin_coarse_symbol,
    hatC_symbol,
    hierarchy,
    modulus_squared,
    mu_bound,
    presets,
    psi_coarsen,
    solve,
    sup_norm,
)

__all__ = [
    "Divergence",
    "HypothesisFailure",
    "InvalidArgument",
    "TrigPoly",
    "UnboundedRatio",
    "analyze",
    "elasticity_symbols",
    "galerkin_coarse_symbol",
    "hatC_symbol",
    "hierarchy",
    "modulus_squared",
    "mu_bound",
    "presets",
    "psi_coarsen",
    "solve",
    "sup_norm",
]
