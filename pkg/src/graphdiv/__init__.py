"""Divisor theory on metric graphs: burning, reduction, rank, gonality,
tree decompositions, and the exact secant-plane generating series."""

from .chipfiring import (
    BurnResult,
    GonalityResult,
    RankCertificate,
    ReductionTrace,
    burn_trace,
    dhar_burn,
    gonality,
    linearly_equivalent,
    q_reduce,
    rank,
    riemann_roch_check,
    set_fire,
    stable_rank,
)
from .divisor import Divisor, canonical_divisor
from .graph import INFINITY, MetricGraph, Model, genus, girth, refine
from .series import PowerSeries, mu, n_d_table, rho, series_pow, sqrt_1_plus_4z
from .treedecomp import TreeDecomposition, conjecture_scan, find_tree_decomposition, glue, root_divisor

__all__ = [
    "BurnResult",
    "Divisor",
    "GonalityResult",
    "INFINITY",
    "MetricGraph",
    "Model",
    "PowerSeries",
    "RankCertificate",
    "ReductionTrace",
    "TreeDecomposition",
    "burn_trace",
    "canonical_divisor",
    "conjecture_scan",
    "dhar_burn",
    "find_tree_decomposition",
    "genus",
    "girth",
    "glue",
    "gonality",
    "linearly_equivalent",
    "mu",
    "n_d_table",
    "q_reduce",
    "rank",
    "refine",
    "rho",
    "riemann_roch_check",
    "root_divisor",
    "series_pow",
    "set_fire",
    "sqrt_1_plus_4z",
    "stable_rank",
]
