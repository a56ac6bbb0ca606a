"""Correlation-MST phase analysis of asset price panels."""

from ._core import (
    DataError,
    __version__,
    analyze_distance_matrix,
    gen_market,
    gen_pa_tree,
    inject,
    log_returns,
    pearson,
    prim_mst,
    scan_prices,
    to_distance,
)

__all__ = [
    "DataError",
    "__version__",
    "analyze_distance_matrix",
    "gen_market",
    "gen_pa_tree",
    "inject",
    "log_returns",
    "pearson",
    "prim_mst",
    "scan_prices",
    "to_distance",
]
