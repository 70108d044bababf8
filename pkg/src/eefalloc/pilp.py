"""The parametric-ILP view of "every envy-free allocation is dominated".

``A`` (rows ``m + mn + n + 1``, columns ``mn``) describes allocations ``x``
dominating a fixed allocation through ``A x <= b``.  ``Q`` (dimension
``m + 2mn + n + 1``) holds the pairs ``(b, z)`` where ``z`` is an envy-free
allocation and ``b`` is the right-hand side induced by it.  The sentence
"for every ``b`` in the integer projection of ``Q`` some integral ``x``
satisfies ``A x <= b``" is valid exactly when no envy-free Pareto-efficient
allocation exists, and a ``b`` admitting no ``x`` is a certificate of one.

Rows of ``A`` are kept in ``<=`` form: the capacity rows as given, the
nonnegativity rows as ``-x <= 0``, and the two domination blocks multiplied
by ``-1``.  Accordingly ``b_3 = -profile(z)`` and ``b_4 = -(welfare(z) + 1)``.

Columns are ordered agent-major (``x{a}_{i}`` at ``a * m + i``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .core import Allocation, Instance, InstanceError, check_allocation, profile_of
from .solver import IlpModel, Limits, ilp_solve, write_model


class CertificateError(ValueError):
    """The supplied vector is not in the integer projection of ``Q``."""


@dataclass(frozen=True)
class PilpSystem:
    inst: Instance
    A: tuple[tuple[int, ...], ...]
    Q: IlpModel
    b_split: dict[str, range]

    @property
    def rows(self) -> int:
        return len(self.A)

    @property
    def columns(self) -> int:
        return self.inst.n * self.inst.m

    @property
    def q_dimension(self) -> int:
        return self.Q.num_vars


def _split(inst: Instance) -> dict[str, range]:
    n, m = inst.n, inst.m
    sizes = (("b1", m), ("b2", m * n), ("b3", n), ("b4", 1))
    out = {}
    start = 0
    for name, size in sizes:
        out[name] = range(start, start + size)
        start += size
    return out


def _col(inst: Instance, a: int, i: int) -> int:
    return a * inst.m + i


def build_matrix(inst: Instance) -> tuple[tuple[int, ...], ...]:
    n, m = inst.n, inst.m
    cols = n * m
    rows: list[list[int]] = []
    for i in range(m):
        row = [0] * cols
        for a in range(n):
            row[_col(inst, a, i)] = 1
        rows.append(row)
    for a in range(n):
        for i in range(m):
            row = [0] * cols
            row[_col(inst, a, i)] = -1
            rows.append(row)
    for a in range(n):
        row = [0] * cols
        for i in range(m):
            row[_col(inst, a, i)] = -inst.utilities[a][i]
        rows.append(row)
    rows.append([-inst.utilities[a][i] for a in range(n) for i in range(m)])
    return tuple(tuple(r) for r in rows)


def build_system(inst: Instance) -> PilpSystem:
    if inst.fairness != "EF":
        raise InstanceError("unsupported_combination", "the PILP system encodes envy-freeness only", "$.fairness")
    n, m = inst.n, inst.m
    split = _split(inst)
    A = build_matrix(inst)
    Q = IlpModel()
    bvars = [Q.add_variable(f"b{k}", None, None) for k in range(len(A))]
    z = [[Q.add_variable(f"x{a}_{i}", None, None, integer=True) for i in range(m)] for a in range(n)]
    for k, i in zip(split["b1"], range(m)):
        Q.add_constraint({bvars[k]: 1}, "=", inst.items[i].multiplicity, f"fix_b{k}")
    for k in split["b2"]:
        Q.add_constraint({bvars[k]: 1}, "=", 0, f"fix_b{k}")
    for i in range(m):
        Q.add_constraint({z[a][i]: 1 for a in range(n)}, "<=", inst.items[i].multiplicity, f"zcap{i}")
    for a in range(n):
        for i in range(m):
            Q.add_constraint({z[a][i]: 1}, ">=", 0, f"znn{a}_{i}")
    for a, b in inst.edges():
        terms: dict[int, int] = {}
        for i, u in enumerate(inst.utilities[a]):
            if u:
                terms[z[a][i]] = u
                terms[z[b][i]] = -u
        Q.add_constraint(terms, ">=", 0, f"ef{a}_{b}")
    for a, k in zip(range(n), split["b3"]):
        terms = {z[a][i]: u for i, u in enumerate(inst.utilities[a]) if u}
        terms[bvars[k]] = 1
        Q.add_constraint(terms, "=", 0, f"bind_b{k}")
    terms = {z[a][i]: u for a in range(n) for i, u in enumerate(inst.utilities[a]) if u}
    terms[bvars[split["b4"][0]]] = 1
    Q.add_constraint(terms, "=", -1, f"bind_b{split['b4'][0]}")
    return PilpSystem(inst, A, Q, split)


def induced_b(inst: Instance, z: Allocation) -> tuple[int, ...]:
    """Right-hand side of the domination system for allocation ``z``."""
    p = profile_of(inst, z)
    return (
        inst.multiplicities
        + (0,) * (inst.n * inst.m)
        + tuple(-v for v in p.per_agent)
        + (-(p.welfare + 1),)
    )


def q_member(sys: PilpSystem, b: Sequence, z: Allocation) -> bool:
    """Exact membership of ``(b, z)`` in ``Q``."""
    if len(b) != sys.rows:
        raise ValueError(f"b has {len(b)} entries, expected {sys.rows}")
    if len(z.entries) != sys.inst.n or any(len(r) != sys.inst.m for r in z.entries):
        raise ValueError("z does not match the instance dimensions")
    point = list(b) + list(z.flat())
    return all(c.satisfied_by(point) for c in sys.Q.constraints)


def _z_for(sys: PilpSystem, b: Sequence, limits: Limits) -> Allocation | None:
    """Search an integral ``z`` with ``(b, z)`` in ``Q``."""
    inst = sys.inst
    model = IlpModel()
    nb = sys.rows
    for a in range(inst.n):
        for i in range(inst.m):
            model.add_variable(f"x{a}_{i}", 0, inst.items[i].multiplicity, integer=True)
    for con in sys.Q.constraints:
        rhs = con.rhs - sum((c * v for c, v in zip(con.coeffs[:nb], b) if c), 0)
        coeffs = con.coeffs[nb:]
        if not any(coeffs):
            lhs = 0
            if not (lhs <= rhs if con.sense == "<=" else lhs >= rhs if con.sense == ">=" else lhs == rhs):
                return None
            continue
        model.add_constraint(list(coeffs), con.sense, rhs, con.name)
    out = limits.check(ilp_solve(model, limits.node_limit, limits.pivot_limit))
    if out.status == "infeasible":
        return None
    flat = out.assignment
    return Allocation(tuple(tuple(int(flat[a * inst.m + i]) for i in range(inst.m)) for a in range(inst.n)))


def domination_system(sys: PilpSystem, b: Sequence) -> IlpModel:
    """``{A x <= b, x integral, 0 <= x <= multiplicities}`` as a feasibility model."""
    inst = sys.inst
    model = IlpModel()
    for a in range(inst.n):
        for i in range(inst.m):
            model.add_variable(f"x{a}_{i}", 0, inst.items[i].multiplicity, integer=True)
    for k, row in enumerate(sys.A):
        model.add_constraint(list(row), "<=", b[k], f"r{k}")
    return model


def verify_certificate(
    sys: PilpSystem, b: Sequence, z: Allocation | None = None, limits: Limits | None = None
) -> bool:
    """True iff ``b`` (in the integer projection of ``Q``) admits no integral ``x``.

    ``z`` is the witness placing ``b`` in the projection; when omitted one
    is searched for.  Raises :class:`CertificateError` if ``b`` is not in
    the projection.
    """
    limits = limits or Limits()
    if len(b) != sys.rows:
        raise ValueError(f"b has {len(b)} entries, expected {sys.rows}")
    if z is not None:
        check_allocation(sys.inst, z)
        if not q_member(sys, b, z):
            raise CertificateError("(b, z) is not in Q")
    elif _z_for(sys, b, limits) is None:
        raise CertificateError("b is not in the integer projection of Q")
    out = limits.check(ilp_solve(domination_system(sys, b), limits.node_limit, limits.pivot_limit))
    return out.status == "infeasible"


# ---------------------------------------------------------------------------
# encoding length


def entry_length(c: int) -> int:
    """Bits for one entry: ``ceil(log2(|c| + 1))`` magnitude bits plus a sign bit."""
    return abs(c).bit_length() + 1


def column_encoding_lengths(inst: Instance) -> list[int]:
    """Per-column encoding length: entry bits plus one delimiter per entry."""
    A = build_matrix(inst)
    return [sum(entry_length(row[j]) + 1 for row in A) for j in range(inst.n * inst.m)]


def compute_phi(inst: Instance) -> int:
    return max(column_encoding_lengths(inst))


# ---------------------------------------------------------------------------
# export


def a_model(sys: PilpSystem, b: Sequence | None = None) -> IlpModel:
    """The ``A``-system with right-hand side ``b`` (default: the one induced by the empty allocation)."""
    if b is None:
        b = induced_b(sys.inst, Allocation.zeros(sys.inst.n, sys.inst.m))
    return domination_system(sys, b)


def export_model(obj: IlpModel | PilpSystem) -> str:
    """Model text for an :class:`IlpModel`, or the ``A``-system of a :class:`PilpSystem`."""
    if isinstance(obj, PilpSystem):
        return write_model(a_model(obj))
    return write_model(obj)


def manifest(sys: PilpSystem) -> str:
    doc = {
        "rows": sys.rows,
        "columns": sys.columns,
        "q_dimension": sys.q_dimension,
        "phi": compute_phi(sys.inst),
        "b_split": {k: [r.start, r.stop] for k, r in sys.b_split.items()},
        "a_rhs": "b induced by the empty allocation",
        "q_variables": {"b": [0, sys.rows], "z": [sys.rows, sys.q_dimension]},
    }
    return json.dumps(doc, indent=2) + "\n"


def export_system(sys: PilpSystem) -> dict[str, str]:
    """File name to document for the ``A``-system, ``Q`` and the manifest."""
    return {"A.model": export_model(sys), "Q.model": write_model(sys.Q), "manifest.json": manifest(sys)}
