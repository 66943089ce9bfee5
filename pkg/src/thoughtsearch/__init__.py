"""Sound and complete state-space search with symbolic successor functions."""

from .search import (
    SearchLimits,
    SearchOutcome,
    SearchProblem,
    Status,
    bfs,
    dfs,
    reconstruct_path,
    validate_path,
)

__all__ = [
    "SearchLimits",
    "SearchOutcome",
    "SearchProblem",
    "Status",
    "bfs",
    "dfs",
    "reconstruct_path",
    "validate_path",
]
__version__ = "0.1.0"
