"""Exact two-phase bounded simplex over an integer (fraction-free) tableau.

Variables are shifted onto ``[0, range]``; finite integral ranges are kept
implicit by complementing columns (``x = range - x'``) instead of adding
rows.  Pivoting follows Bland's rule: the lowest-index improving column
enters and ratio ties go to the lowest variable index, which rules out
cycling and makes every run reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .model import IlpModel, Rational, rational

DEFAULT_PIVOT_LIMIT = 10**7


@dataclass
class SolveOutcome:
    """Result of an LP or ILP solve.

    ``status`` is one of ``optimal``, ``feasible`` (a witness for a model
    without objective), ``infeasible``, ``unbounded`` or ``limit``.
    """

    status: str
    assignment: tuple[Rational, ...] | None = None
    objective: Rational | None = None
    nodes: int = 0
    pivots: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.status in ("optimal", "feasible")


def _lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        if isinstance(v, Fraction):
            out = math.lcm(out, v.denominator)
    return out


def _integer_row(coeffs: Sequence[Rational], rhs: Rational) -> tuple[list[int], int]:
    scale = _lcm_of_denominators(list(coeffs) + [rhs])
    row = [int(c * scale) for c in coeffs]
    b = int(rhs * scale)
    g = 0
    for v in row:
        if v:
            g = math.gcd(g, v)
    if g > 1:
        g = math.gcd(g, b)
        if g > 1:
            row = [v // g for v in row]
            b //= g
    return row, b


def solve_relaxation(
    model: IlpModel,
    lo: Sequence[Rational | None] | None = None,
    hi: Sequence[Rational | None] | None = None,
    pivot_limit: int = DEFAULT_PIVOT_LIMIT,
) -> SolveOutcome:
    """Solve the LP relaxation of ``model`` with optional bound overrides."""
    nvar = model.num_vars
    lo = [v.lo for v in model.variables] if lo is None else list(lo)
    hi = [v.hi for v in model.variables] if hi is None else list(hi)

    # structural columns: (variable, sign); x_var = offset + sum(sign * y)
    cols: list[tuple[int, int]] = []
    col_range: list[Rational | None] = []
    offset: list[Rational] = [0] * nvar
    extra_rows: list[tuple[int, Rational]] = []
    for j in range(nvar):
        if lo[j] is not None and hi[j] is not None and lo[j] > hi[j]:
            return SolveOutcome("infeasible")
        if lo[j] is not None:
            offset[j] = lo[j]
            r = None if hi[j] is None else rational(hi[j] - lo[j])
            cols.append((j, 1))
            if isinstance(r, Fraction):
                extra_rows.append((len(cols) - 1, r))
                r = None
            col_range.append(r)
        elif hi[j] is not None:
            offset[j] = hi[j]
            cols.append((j, -1))
            col_range.append(None)
        else:
            cols.append((j, 1))
            col_range.append(None)
            cols.append((j, -1))
            col_range.append(None)
    ns = len(cols)

    rows: list[tuple[list[int], str, int]] = []
    for con in model.constraints:
        coeffs = [con.coeffs[j] * sign for j, sign in cols]
        rhs = con.rhs - sum((con.coeffs[j] * offset[j] for j in range(nvar) if con.coeffs[j] and offset[j]), 0)
        row, b = _integer_row(coeffs, rhs)
        sense = con.sense
        if not any(row):
            ok = (b >= 0) if sense == "<=" else (b <= 0) if sense == ">=" else (b == 0)
            if not ok:
                return SolveOutcome("infeasible")
            continue
        if b < 0:
            row = [-v for v in row]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        rows.append((row, sense, b))
    for k, r in extra_rows:
        coeffs = [0] * ns
        coeffs[k] = 1
        row, b = _integer_row(coeffs, r)
        rows.append((row, "<=", b))

    nrows = len(rows)
    nslack = sum(1 for _, s, _ in rows if s != "=")
    nart = sum(1 for _, s, _ in rows if s != "<=")
    first_art = ns + nslack
    ncols = first_art + nart
    rhs = ncols
    T: list[list[int]] = []
    basis: list[int] = []
    slack = ns
    art = first_art
    for row, sense, b in rows:
        t = row + [0] * (ncols - ns) + [b]
        if sense == "<=":
            t[slack] = 1
            basis.append(slack)
            slack += 1
        elif sense == ">=":
            t[slack] = -1
            slack += 1
            t[art] = 1
            basis.append(art)
            art += 1
        else:
            t[art] = 1
            basis.append(art)
            art += 1
        T.append(t)
    upper: list[int | None] = list(col_range) + [None] * (ncols - ns)
    flipped = [False] * ncols

    obj_sign = 0
    if model.objective is not None:
        obj_sign = 1 if model.objective.sense == "max" else -1
        ccoeffs = [model.objective.coeffs[j] * sign * obj_sign for j, sign in cols]
        scale = _lcm_of_denominators(ccoeffs)
        cost = [-int(c * scale) for c in ccoeffs]
    else:
        cost = [0] * ns
    T.append(cost + [0] * (ncols - ns) + [0])
    phase1 = [0] * (ncols + 1)
    for i in range(nrows):
        if basis[i] >= first_art:
            row = T[i]
            for k in range(first_art):
                if row[k]:
                    phase1[k] -= row[k]
            phase1[rhs] -= row[rhs]
    T.append(phase1)
    obj2 = nrows
    obj1 = nrows + 1

    D = 1
    pivots = 0

    def run(obj_row: int, allowed: int) -> str:
        nonlocal D, pivots
        while True:
            R = T[obj_row]
            enter = -1
            for k in range(allowed):
                if R[k] < 0:
                    enter = k
                    break
            if enter < 0:
                return "optimal"
            if pivots >= pivot_limit:
                return "limit"
            pivots += 1
            res = kernels.ratio_test(T, enter, nrows, rhs, basis, upper, D)
            own = upper[enter]
            if res is None and own is None:
                return "unbounded"
            take_self = res is None
            if not take_self and own is not None:
                _, _, num, den = res
                lhs = own * den
                take_self = lhs < num or (lhs == num and enter < basis[res[0]])
            if take_self:
                kernels.complement_column(T, enter, rhs, own)
                flipped[enter] = not flipped[enter]
                continue
            i, to_upper, _, _ = res
            if to_upper:
                leave = basis[i]
                kernels.complement_basic_row(T, i, leave, rhs, upper[leave], D)
                flipped[leave] = not flipped[leave]
            D = kernels.pivot(T, i, enter, D)
            basis[i] = enter

    if nart:
        status = run(obj1, ncols)
        if status == "limit":
            return SolveOutcome("limit", pivots=pivots)
        if T[obj1][rhs] < 0:
            return SolveOutcome("infeasible", pivots=pivots)
        for i in range(nrows):
            if basis[i] < first_art:
                continue
            row = T[i]
            k = next((k for k in range(first_art) if row[k]), -1)
            if k < 0:
                continue  # redundant row; its artificial stays basic at zero
            if row[k] < 0:
                T[i] = [-v for v in row]
            D = kernels.pivot(T, i, k, D)
            basis[i] = k
    if model.objective is not None:
        status = run(obj2, first_art)
        if status != "optimal":
            return SolveOutcome(status, pivots=pivots)

    values: list[Rational] = [0] * ncols
    for i, k in enumerate(basis):
        values[k] = Fraction(T[i][rhs], D)
    x: list[Rational] = list(offset)
    for k, (j, sign) in enumerate(cols):
        v = values[k]
        if flipped[k]:
            v = upper[k] - v
        if v:
            x[j] += sign * v
    assignment = tuple(rational(v) for v in x)
    objective = None
    status = "feasible"
    if model.objective is not None:
        objective = rational(model.objective.value(assignment))
        status = "optimal"
    return SolveOutcome(status, assignment, objective, pivots=pivots)


def lp_solve(model: IlpModel, pivot_limit: int = DEFAULT_PIVOT_LIMIT) -> SolveOutcome:
    """Exact LP optimum of ``model`` ignoring integrality."""
    out = solve_relaxation(model, pivot_limit=pivot_limit)
    out.stats = {"pivots": out.pivots}
    return out
