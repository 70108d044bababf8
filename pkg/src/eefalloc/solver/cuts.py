"""No-good cuts excluding allocations dominated by a recorded profile."""

from __future__ import annotations

from typing import Sequence

from .model import IlpModel


def _value_bounds(model: IlpModel, row: Sequence[int], block: Sequence[int]) -> tuple[int, int]:
    lo = hi = 0
    for u, k in zip(row, block):
        var = model.variables[k]
        if u > 0:
            lo += u * var.lo
            hi += u * var.hi
        elif u < 0:
            lo += u * var.hi
            hi += u * var.lo
    return lo, hi


def add_nogood_dominance_cut(
    model: IlpModel,
    q: Sequence[int],
    utilities: Sequence[Sequence[int]],
    xvars: Sequence[Sequence[int]],
) -> IlpModel:
    """Forbid every allocation whose profile is dominated by ``q``; mutates and returns ``model``.

    With ``S_a`` agent ``a``'s value of its own bundle, at least one of the
    binaries ``d{k}_0 .. d{k}_n`` is on, ``d{k}_0`` enforces
    ``sum_a S_a >= sum(q)`` and ``d{k}_{a+1}`` enforces ``S_a >= q_a + 1``.
    Each implication uses a big-M computed exactly from the bounds of the
    allocation variables.
    """
    n = len(xvars)
    k = sum(1 for v in model.variables if v.name.startswith("d") and v.name.endswith("_0"))
    d0 = model.add_variable(f"d{k}_0", 0, 1, integer=True)
    selectors = [d0]
    total_lo = total_hi = 0
    welfare: dict[int, int] = {}
    for a in range(n):
        lo, hi = _value_bounds(model, utilities[a], xvars[a])
        total_lo += lo
        total_hi += hi
        terms = {x: u for x, u in zip(xvars[a], utilities[a]) if u}
        welfare.update(terms)
        need = q[a] + 1
        big = max(hi - lo + 1, need - lo)
        d = model.add_variable(f"d{k}_{a + 1}", 0, 1, integer=True)
        selectors.append(d)
        terms[d] = -big
        model.add_constraint(terms, ">=", need - big, f"cut{k}_{a + 1}")
    need = sum(q)
    big = max(total_hi - total_lo + 1, need - total_lo)
    welfare[d0] = -big
    model.add_constraint(welfare, ">=", need - big, f"cut{k}_0")
    model.add_constraint({d: 1 for d in selectors}, ">=", 1, f"cut{k}_any")
    return model
