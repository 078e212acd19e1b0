"""Exact local alignment search over an FM-index of the text."""

from ._alae import (
    AlaeError,
    Database,
    analysis_params,
    entry_bound,
    length_bounds,
    oracle_search,
    q_value,
    threshold_from_evalue,
)

__all__ = [
    "AlaeError",
    "Database",
    "analysis_params",
    "entry_bound",
    "length_bounds",
    "oracle_search",
    "q_value",
    "threshold_from_evalue",
]
