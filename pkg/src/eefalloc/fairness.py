"""Fairness predicates on concrete allocations and their ILP encoders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Allocation, Instance, InstanceError, bundle_value, check_allocation
from .solver import IlpModel


@dataclass(frozen=True)
class EnvyReport:
    """Edges ``(a, b, deficit)`` where agent ``a`` values ``b``'s bundle above its own."""

    envious_pairs: tuple[tuple[int, int, int], ...]

    def __bool__(self) -> bool:
        return bool(self.envious_pairs)

    @property
    def envy_free(self) -> bool:
        return not self.envious_pairs


def _require_goods(inst: Instance, notion: str) -> None:
    for a, row in enumerate(inst.utilities):
        for i, u in enumerate(row):
            if u < 0:
                raise InstanceError(
                    "unsupported_combination", f"{notion} requires nonnegative utilities", f"$.utilities[{a}][{i}]"
                )


def is_envy_free(inst: Instance, alloc: Allocation) -> EnvyReport:
    check_allocation(inst, alloc)
    pairs = []
    for a, b in inst.edges():
        row = inst.utilities[a]
        deficit = bundle_value(row, alloc[b]) - bundle_value(row, alloc[a])
        if deficit > 0:
            pairs.append((a, b, deficit))
    return EnvyReport(tuple(pairs))


def ef1_violations(inst: Instance, alloc: Allocation) -> list[tuple[int, int, int]]:
    """Edges that stay envious after removing the best item of the envied bundle.

    Each entry is ``(a, b, remaining_envy)``.
    """
    _require_goods(inst, "EF1")
    check_allocation(inst, alloc)
    out = []
    for a, b in inst.edges():
        row = inst.utilities[a]
        own = bundle_value(row, alloc[a])
        other = bundle_value(row, alloc[b])
        held = [row[i] for i in range(inst.m) if alloc[b][i] >= 1]
        gap = other - (max(held) if held else 0) - own
        if gap > 0:
            out.append((a, b, gap))
    return out


def is_ef1(inst: Instance, alloc: Allocation) -> bool:
    return not ef1_violations(inst, alloc)


def efx_violations(inst: Instance, alloc: Allocation) -> list[tuple[int, int, int]]:
    """Edges where removing some positively valued item still leaves envy.

    Entries are ``(a, b, remaining_envy)`` for the least valuable such item.
    """
    _require_goods(inst, "EFX")
    check_allocation(inst, alloc)
    out = []
    for a, b in inst.edges():
        row = inst.utilities[a]
        own = bundle_value(row, alloc[a])
        other = bundle_value(row, alloc[b])
        removable = [row[i] for i in range(inst.m) if alloc[b][i] >= 1 and row[i] > 0]
        gap = other - (min(removable) if removable else 0) - own
        if gap > 0:
            out.append((a, b, gap))
    return out


def is_efx(inst: Instance, alloc: Allocation) -> bool:
    return not efx_violations(inst, alloc)


def is_fair(inst: Instance, alloc: Allocation) -> bool:
    """Evaluate the instance's selected fairness notion."""
    if inst.fairness == "EF":
        return is_envy_free(inst, alloc).envy_free
    if inst.fairness == "EF1":
        return is_ef1(inst, alloc)
    return is_efx(inst, alloc)


# ---------------------------------------------------------------------------
# encoders


def add_allocation_vars(model: IlpModel, inst: Instance, prefix: str = "x") -> list[list[int]]:
    """Add an ``n x m`` block of integer variables ``0 <= x{a}_{i} <= m_i``."""
    return [
        [model.add_variable(f"{prefix}{a}_{i}", 0, inst.items[i].multiplicity, integer=True) for i in range(inst.m)]
        for a in range(inst.n)
    ]


def add_item_capacity(model: IlpModel, inst: Instance, xvars: Sequence[Sequence[int]]) -> None:
    for i, item in enumerate(inst.items):
        model.add_constraint({xvars[a][i]: 1 for a in range(inst.n)}, "<=", item.multiplicity, f"cap{i}")


def _envy_terms(inst: Instance, xvars, a: int, b: int) -> dict[int, int]:
    """Terms of ``u_a(own bundle) - u_a(b's bundle)``."""
    terms: dict[int, int] = {}
    for i, u in enumerate(inst.utilities[a]):
        if u:
            terms[xvars[a][i]] = u
            terms[xvars[b][i]] = -u
    return terms


def encode_fairness(inst: Instance, model: IlpModel, xvars: Sequence[Sequence[int]]) -> list[int]:
    """Append constraints whose integer solutions are exactly the fair allocations.

    ``xvars`` indexes an allocation block already present in ``model``.
    Returns the indices of the added constraints.

    EF1 needs no big-M: one selector per (edge, positively valued item)
    marks the removed item, at most one selector is on, a selector may only
    be on when the envied bundle holds that item, and the selected utility
    is added to the envy inequality.  EFX forces an indicator on whenever
    the envied bundle holds a positively valued item and, through an exact
    big-M, applies the shifted inequality for that item.
    """
    if inst.fairness != "EF":
        _require_goods(inst, inst.fairness)
    added: list[int] = []
    for e, (a, b) in enumerate(inst.edges()):
        row = inst.utilities[a]
        terms = _envy_terms(inst, xvars, a, b)
        if inst.fairness == "EF":
            if terms:
                added.append(model.add_constraint(terms, ">=", 0, f"ef{a}_{b}"))
            continue
        positive = [i for i in range(inst.m) if row[i] > 0 and inst.items[i].multiplicity > 0]
        if inst.fairness == "EF1":
            sel = {}
            for i in positive:
                y = model.add_variable(f"y{e}_{i}", 0, 1, integer=True)
                sel[i] = y
                added.append(model.add_constraint({xvars[b][i]: 1, y: -1}, ">=", 0, f"ef1h{e}_{i}"))
            if sel:
                added.append(model.add_constraint({y: 1 for y in sel.values()}, "<=", 1, f"ef1o{e}"))
            shifted = dict(terms)
            for i, y in sel.items():
                shifted[y] = row[i]
            if shifted:
                added.append(model.add_constraint(shifted, ">=", 0, f"ef1{a}_{b}"))
        else:
            lo, hi = inst.utility_bounds(a)
            big = hi - lo + 1
            for i in positive:
                w = model.add_variable(f"y{e}_{i}", 0, 1, integer=True)
                mult = inst.items[i].multiplicity
                added.append(model.add_constraint({xvars[b][i]: 1, w: -mult}, "<=", 0, f"efxh{e}_{i}"))
                shifted = dict(terms)
                shifted[w] = -big
                added.append(model.add_constraint(shifted, ">=", -big - row[i], f"efx{a}_{b}_{i}"))
    return added


def fair_model(inst: Instance) -> tuple[IlpModel, list[list[int]]]:
    """Allocation block plus item capacities and the selected fairness notion."""
    model = IlpModel()
    xvars = add_allocation_vars(model, inst)
    add_item_capacity(model, inst, xvars)
    encode_fairness(inst, model, xvars)
    return model, xvars
