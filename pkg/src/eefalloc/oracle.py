"""Brute-force ground truth by exhaustive allocation enumeration.

Deliberately naive: fairness comes from the predicates in
:mod:`eefalloc.fairness`, never from the ILP encoders, and efficiency from
pairwise profile comparison.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, prod
from typing import Iterator, Sequence

from .core import Allocation, Instance, UtilityProfile, Verdict
from .dominance import profile_dominates
from .fairness import is_fair

DEFAULT_ENUM_CAP = 10**7


class EnumerationCapError(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} allocations exceed the enumeration cap {cap}")
        self.count = count
        self.cap = cap


def default_cap() -> int:
    return int(os.environ.get("EEF_ENUM_CAP", DEFAULT_ENUM_CAP))


def count_allocations(inst: Instance) -> int:
    return prod(comb(mult + inst.n, inst.n) for mult in inst.multiplicities)


def _check_cap(inst: Instance, cap: int | None) -> int:
    cap = default_cap() if cap is None else cap
    count = count_allocations(inst)
    if count > cap:
        raise EnumerationCapError(count, cap)
    return count


def _flat_allocations(n: int, m: int, mult: Sequence[int], fixed: Sequence[int] | None = None) -> Iterator[tuple]:
    """Row-major lexicographic enumeration; ``fixed`` pins the first item type's column."""
    cells = n * m
    vals = [0] * cells
    remaining = list(mult)
    if fixed is not None:
        remaining[0] -= sum(fixed)

    def rec(k: int):
        if k == cells:
            yield tuple(vals)
            return
        i = k % m
        if fixed is not None and i == 0:
            vals[k] = fixed[k // m]
            yield from rec(k + 1)
            return
        for v in range(remaining[i] + 1):
            vals[k] = v
            remaining[i] -= v
            yield from rec(k + 1)
            remaining[i] += v

    yield from rec(0)


def _shape(flat: tuple, m: int) -> Allocation:
    return Allocation(tuple(flat[k : k + m] for k in range(0, len(flat), m)))


def enumerate_allocations(inst: Instance, cap: int | None = None) -> Iterator[Allocation]:
    """Every allocation (column sums within multiplicities) in lexicographic order."""
    _check_cap(inst, cap)
    for flat in _flat_allocations(inst.n, inst.m, inst.multiplicities):
        yield _shape(flat, inst.m)


def _profile(inst: Instance, alloc: Allocation) -> tuple[int, ...]:
    return tuple(sum(u * x for u, x in zip(inst.utilities[a], alloc[a])) for a in range(inst.n))


def pareto_frontier(profiles) -> list[tuple[int, ...]]:
    """Undominated profiles, by decreasing welfare then decreasing lexicographic order."""
    ordered = sorted(set(profiles), key=lambda p: (sum(p), p), reverse=True)
    frontier: list[tuple[int, ...]] = []
    for p in ordered:
        # anything dominating p has larger welfare, so it was seen earlier
        if not any(profile_dominates(q, p) for q in frontier):
            frontier.append(p)
    return frontier


@dataclass(frozen=True)
class Census:
    allocations: int
    fair: int
    pareto: int
    intersection: int

    def to_dict(self) -> dict:
        return {
            "allocations": self.allocations,
            "fair": self.fair,
            "pareto": self.pareto,
            "intersection": self.intersection,
        }


def _scan(inst: Instance, fixed: Sequence[int] | None) -> tuple[Counter, list]:
    """Profile counts and the fair allocations (with profiles) of one partition."""
    counts: Counter = Counter()
    fair: list = []
    for flat in _flat_allocations(inst.n, inst.m, inst.multiplicities, fixed):
        alloc = _shape(flat, inst.m)
        p = _profile(inst, alloc)
        counts[p] += 1
        if is_fair(inst, alloc):
            fair.append((flat, p))
    return counts, fair


def _column_compositions(n: int, total: int) -> list[tuple[int, ...]]:
    return [flat for flat in _flat_allocations(n, 1, (total,))]


def brute_eef(inst: Instance, cap: int | None = None, jobs: int = 1) -> tuple[Verdict, Census]:
    """Decide EEF existence by enumeration; the witness is the lexicographically first.

    With ``jobs > 1`` the allocations are partitioned by the first item
    type's column and scanned in worker processes; results are identical.
    """
    total = _check_cap(inst, cap)
    if jobs > 1:
        parts = _column_compositions(inst.n, inst.multiplicities[0])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan, [inst] * len(parts), parts))
        counts: Counter = Counter()
        fair: list = []
        for c, f in results:
            counts.update(c)
            fair.extend(f)
        fair.sort()
    else:
        counts, fair = _scan(inst, None)
    frontier = pareto_frontier(counts)
    efficient = set(frontier)
    pareto = sum(counts[p] for p in frontier)
    hits = [(flat, p) for flat, p in fair if p in efficient]
    census = Census(total, len(fair), pareto, len(hits))
    if hits:
        flat, p = hits[0]
        return Verdict("YES", _shape(flat, inst.m), UtilityProfile(p), (), 0, {"allocations": total}), census
    best = max(fair, key=lambda fp: sum(fp[1]))  # first among ties: fair is in lex order
    blocked: list[tuple[int, ...]] = []
    for _, p in fair:
        q = next(q for q in frontier if profile_dominates(q, p))
        if q not in blocked:
            blocked.append(q)
    verdict = Verdict(
        "NO", None, UtilityProfile(best[1]), tuple(UtilityProfile(q) for q in blocked), 0, {"allocations": total}
    )
    return verdict, census


def brute_pilp_sentence(inst: Instance, cap: int | None = None) -> bool:
    """Truth value of the parametric sentence, by double enumeration."""
    return pilp_counterexample(inst, cap) is None


def pilp_counterexample(inst: Instance, cap: int | None = None) -> tuple[int, ...] | None:
    """First ``b`` in the integer projection of ``Q`` with no integral ``x``, if any.

    ``b`` is induced by each envy-free ``z`` in lexicographic order and
    ``A x <= b`` is tested literally against every allocation ``x``; points
    outside the allocation box violate the capacity or nonnegativity rows,
    so they need no test.
    """
    from .fairness import is_envy_free
    from .pilp import build_system, induced_b

    _check_cap(inst, cap)
    sys = build_system(inst)
    A = sys.A
    images = []
    for flat in _flat_allocations(inst.n, inst.m, inst.multiplicities):
        images.append(tuple(sum(c * v for c, v in zip(row, flat)) for row in A))
    for flat in _flat_allocations(inst.n, inst.m, inst.multiplicities):
        z = _shape(flat, inst.m)
        if not is_envy_free(inst, z).envy_free:
            continue
        b = induced_b(inst, z)
        if not any(all(ax <= bk for ax, bk in zip(img, b)) for img in images):
            return b
    return None
