"""Pareto domination on concrete allocations and as integer programs."""

from __future__ import annotations

from typing import Sequence

from .core import Allocation, Instance, UtilityProfile, profile_of
from .fairness import add_allocation_vars, add_item_capacity
from .solver import IlpModel, Limits, ilp_solve


def profile_dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff ``p >= q`` componentwise with at least one strict coordinate."""
    strict = False
    for a, b in zip(p, q):
        if a < b:
            return False
        if a > b:
            strict = True
    return strict


def pareto_dominates(inst: Instance, x: Allocation, z: Allocation) -> bool:
    return profile_dominates(profile_of(inst, x).per_agent, profile_of(inst, z).per_agent)


def welfare_terms(inst: Instance, xvars) -> dict[int, int]:
    return {xvars[a][i]: u for a in range(inst.n) for i, u in enumerate(inst.utilities[a]) if u}


def encode_domination(inst: Instance, p: UtilityProfile) -> tuple[IlpModel, list[list[int]]]:
    """Integer points are exactly the allocations dominating any allocation with profile ``p``.

    Nonnegativity of ``x`` lives in the variable bounds; item capacities,
    per-agent floors and the welfare gain of at least one are rows.  The
    ``+ 1`` is exact only because utilities are integers.
    """
    model = IlpModel()
    xvars = add_allocation_vars(model, inst)
    add_item_capacity(model, inst, xvars)
    for a in range(inst.n):
        terms = {xvars[a][i]: u for i, u in enumerate(inst.utilities[a]) if u}
        model.add_constraint(terms, ">=", p[a], f"keep{a}")
    model.add_constraint(welfare_terms(inst, xvars), ">=", 1 + p.welfare, "gain")
    return model, xvars


def _allocation(inst: Instance, xvars, assignment) -> Allocation:
    return Allocation(tuple(tuple(int(assignment[xvars[a][i]]) for i in range(inst.m)) for a in range(inst.n)))


def find_dominator(inst: Instance, p: UtilityProfile, limits: Limits | None = None) -> Allocation | None:
    """Some allocation dominating profile ``p``, or ``None``."""
    limits = limits or Limits()
    model, xvars = encode_domination(inst, p)
    out = limits.check(ilp_solve(model, limits.node_limit, limits.pivot_limit))
    if out.status == "infeasible":
        return None
    return _allocation(inst, xvars, out.assignment)


def max_welfare_dominator(inst: Instance, p: UtilityProfile, limits: Limits | None = None) -> Allocation | None:
    """A welfare-maximal allocation among those dominating ``p``.

    Its profile is Pareto-efficient: anything dominating it would also
    dominate ``p`` and have strictly larger welfare.
    """
    limits = limits or Limits()
    model, xvars = encode_domination(inst, p)
    model.set_objective("max", welfare_terms(inst, xvars))
    out = limits.check(ilp_solve(model, limits.node_limit, limits.pivot_limit))
    if out.status == "infeasible":
        return None
    return _allocation(inst, xvars, out.assignment)


def is_pareto_efficient(inst: Instance, alloc: Allocation, limits: Limits | None = None) -> bool:
    return find_dominator(inst, profile_of(inst, alloc), limits) is None
