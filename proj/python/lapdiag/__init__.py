"""Approximate diag(L^+) of graph Laplacians and electrical centralities."""

from ._lapdiag import (
    Graph,
    ParseError,
    SolverError,
    __version__,
    approx_diag,
    bekas_diag,
    compare,
    electrical_closeness,
    electrical_farness,
    exact_diag,
    kirchhoff_edge_centrality,
    kirchhoff_index,
    nrwb,
    run_cli,
    spanning_edge_resistance,
)

__all__ = [
    "Graph",
    "ParseError",
    "SolverError",
    "__version__",
    "approx_diag",
    "bekas_diag",
    "compare",
    "electrical_closeness",
    "electrical_farness",
    "exact_diag",
    "kirchhoff_edge_centrality",
    "kirchhoff_index",
    "nrwb",
    "run_cli",
    "spanning_edge_resistance",
]
