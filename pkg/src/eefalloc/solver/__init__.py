"""Exact LP/ILP solving: rational simplex plus branch-and-bound."""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import add_nogood_dominance_cut
from .ilp import DEFAULT_NODE_LIMIT, ilp_solve
from .lp import DEFAULT_PIVOT_LIMIT, SolveOutcome, lp_solve
from .model import Constraint, IlpModel, ModelFormatError, Objective, Variable, read_model, write_model


class SolverLimitError(RuntimeError):
    """A node or pivot limit stopped a solve before it reached an answer."""

    def __init__(self, message: str, outcome: SolveOutcome | None = None):
        super().__init__(message)
        self.outcome = outcome


@dataclass(frozen=True)
class Limits:
    node_limit: int = DEFAULT_NODE_LIMIT
    pivot_limit: int = DEFAULT_PIVOT_LIMIT

    def check(self, outcome: SolveOutcome) -> SolveOutcome:
        """Raise :class:`SolverLimitError` on a ``limit`` outcome, pass others through."""
        if outcome.status == "limit":
            raise SolverLimitError(
                f"solver limit reached after {outcome.nodes} nodes and {outcome.pivots} pivots", outcome
            )
        if outcome.status == "unbounded":
            raise RuntimeError("unexpected unbounded model")
        return outcome


__all__ = [
    "add_nogood_dominance_cut",
    "Limits",
    "SolverLimitError",
    "DEFAULT_NODE_LIMIT",
    "DEFAULT_PIVOT_LIMIT",
    "Constraint",
    "IlpModel",
    "ModelFormatError",
    "Objective",
    "SolveOutcome",
    "Variable",
    "ilp_solve",
    "lp_solve",
    "read_model",
    "write_model",
]
