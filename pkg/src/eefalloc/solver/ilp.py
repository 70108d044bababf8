"""Depth-first branch-and-bound on exact LP relaxations."""

from __future__ import annotations

import math
from fractions import Fraction

from .lp import DEFAULT_PIVOT_LIMIT, SolveOutcome, solve_relaxation
from .model import IlpModel, Rational

DEFAULT_NODE_LIMIT = 10**6


def _floor(v: Rational) -> int:
    return v if isinstance(v, int) else math.floor(v)


def _integral_objective(model: IlpModel) -> bool:
    """True when every objective value at an integer point is an integer."""
    if model.objective is None:
        return False
    for c, var in zip(model.objective.coeffs, model.variables):
        if c and (not var.integer or isinstance(c, Fraction)):
            return False
    return True


def ilp_solve(
    model: IlpModel,
    node_limit: int = DEFAULT_NODE_LIMIT,
    pivot_limit: int = DEFAULT_PIVOT_LIMIT,
) -> SolveOutcome:
    """Exact integer optimum (or feasibility witness) of ``model``.

    Branches on the lowest-index fractional integer variable, explores the
    floor branch first and prunes against the incumbent by exact comparison.
    Integer variables must have finite bounds.
    """
    for v in model.variables:
        if v.integer and (v.lo is None or v.hi is None):
            raise ValueError(f"integer variable {v.name} needs finite bounds")
    integer_idx = [k for k, v in enumerate(model.variables) if v.integer]
    sign = 0
    if model.objective is not None:
        sign = 1 if model.objective.sense == "max" else -1
    round_bound = _integral_objective(model)

    nodes = 0
    pivots = 0
    best: tuple | None = None
    best_val: Rational | None = None  # in maximization orientation
    stack = [([v.lo for v in model.variables], [v.hi for v in model.variables])]

    def outcome(status: str, **kw) -> SolveOutcome:
        return SolveOutcome(status, nodes=nodes, pivots=pivots, stats={"nodes": nodes, "pivots": pivots}, **kw)

    while stack:
        if nodes >= node_limit:
            return outcome("limit")
        lo, hi = stack.pop()
        nodes += 1
        lp = solve_relaxation(model, lo, hi, pivot_limit - pivots)
        pivots += lp.pivots
        if lp.status == "limit":
            return outcome("limit")
        if lp.status == "infeasible":
            continue
        if lp.status == "unbounded":
            # integer variables are bounded, so an unbounded relaxation is an
            # unbounded ILP exactly when the ILP is feasible
            probe = model.copy()
            probe.objective = None
            feas = ilp_solve(probe, node_limit - nodes, pivot_limit - pivots)
            nodes += feas.nodes
            pivots += feas.pivots
            if feas.status == "feasible":
                return outcome("unbounded")
            return outcome(feas.status)
        x = lp.assignment
        if sign and best_val is not None:
            bound = sign * lp.objective
            if round_bound:
                bound = _floor(bound)
            if bound <= best_val:
                continue
        frac = next((k for k in integer_idx if isinstance(x[k], Fraction)), -1)
        if frac < 0:
            point = tuple(int(v) if k in integer_idx else v for k, v in enumerate(x))
            if not sign:
                return outcome("feasible", assignment=point)
            best = point
            best_val = sign * lp.objective
            continue
        down = math.floor(x[frac])
        up_lo = list(lo)
        up_lo[frac] = down + 1
        down_hi = list(hi)
        down_hi[frac] = down
        stack.append((up_lo, hi))
        stack.append((lo, down_hi))
    if best is None:
        return outcome("infeasible")
    return outcome("optimal", assignment=best, objective=sign * best_val)
