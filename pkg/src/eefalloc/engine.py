"""Counterexample-guided decision of envy-free Pareto-efficient existence.

The loop alternates two integer programs.  The *fair* side looks for a
welfare-maximal fair allocation ``z`` that no recorded profile dominates.
The *efficiency* side looks for an allocation dominating ``z``; if none
exists ``z`` is the answer.  Otherwise the welfare-maximal dominator has a
Pareto-efficient profile ``q``, which is recorded and cut away from the fair
side.  Each recorded ``q`` is a new Pareto-efficient profile (a repeated one
would already have blocked ``z``), so the loop terminates; when the fair
side runs dry every fair allocation is dominated and the answer is NO.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Allocation, Instance, UtilityProfile, Verdict, check_allocation, profile_of
from .dominance import encode_domination, max_welfare_dominator, welfare_terms
from .fairness import ef1_violations, efx_violations, fair_model, is_envy_free
from .pilp import induced_b
from .solver import IlpModel, Limits, SolverLimitError, add_nogood_dominance_cut, ilp_solve

DEFAULT_ITERATION_LIMIT = 10**4


class EngineLimitError(RuntimeError):
    """A resource limit stopped the decision; carries the partial trace."""

    def __init__(self, message: str, iterations: int, blocked: list[UtilityProfile], stats: dict):
        super().__init__(message)
        self.iterations = iterations
        self.blocked_profiles = tuple(blocked)
        self.stats = dict(stats)


@dataclass
class _Counters:
    ilp_calls: int = 0
    nodes: int = 0
    pivots: int = 0

    def record(self, out) -> None:
        self.ilp_calls += 1
        self.nodes += out.nodes
        self.pivots += out.pivots

    def as_dict(self) -> dict:
        return {"ilp_calls": self.ilp_calls, "nodes": self.nodes, "pivots": self.pivots}


def _solve(model: IlpModel, limits: Limits, counters: _Counters):
    out = ilp_solve(model, limits.node_limit, limits.pivot_limit)
    counters.record(out)
    return limits.check(out)


def _read(inst: Instance, xvars, assignment) -> Allocation:
    return Allocation(tuple(tuple(int(assignment[xvars[a][i]]) for i in range(inst.m)) for a in range(inst.n)))


def solve_eef(
    inst: Instance,
    limits: Limits | None = None,
    iteration_limit: int = DEFAULT_ITERATION_LIMIT,
    probe: bool = True,
) -> Verdict:
    """Decide whether ``inst`` has a fair Pareto-efficient allocation.

    ``probe`` enables the shortcut that, after finding a new Pareto-efficient
    profile ``q``, asks whether some fair allocation attains ``q`` exactly;
    such an allocation is fair and (having an undominated profile)
    efficient, so the answer is YES immediately.  Turning it off never
    changes the answer, only the number of iterations.
    """
    limits = limits or Limits()
    counters = _Counters()
    blocked: list[UtilityProfile] = []
    fair, xvars = fair_model(inst)
    search = fair.copy()
    search.set_objective("max", welfare_terms(inst, xvars))
    first: UtilityProfile | None = None

    def verdict(answer: str, cert: Allocation | None, profile: UtilityProfile, iterations: int) -> Verdict:
        return Verdict(answer, cert, profile, tuple(blocked), iterations, counters.as_dict())

    try:
        for iteration in range(1, iteration_limit + 1):
            out = _solve(search, limits, counters)
            if out.status == "infeasible":
                return verdict("NO", None, first, iteration)
            z = _read(inst, xvars, out.assignment)
            p = profile_of(inst, z)
            if first is None:
                first = p
            # no dominator at all <=> no welfare-maximal dominator
            dom, dvars = encode_domination(inst, p)
            dom.set_objective("max", welfare_terms(inst, dvars))
            best = _solve(dom, limits, counters)
            if best.status == "infeasible":
                return verdict("YES", z, p, iteration)
            q = profile_of(inst, _read(inst, dvars, best.assignment))
            if probe:
                exact = fair.copy()
                for a in range(inst.n):
                    terms = {xvars[a][i]: u for i, u in enumerate(inst.utilities[a]) if u}
                    exact.add_constraint(terms, "=", q[a], f"hit{a}")
                hit = _solve(exact, limits, counters)
                if hit.status != "infeasible":
                    return verdict("YES", _read(inst, xvars, hit.assignment), q, iteration)
            blocked.append(q)
            add_nogood_dominance_cut(search, q.per_agent, inst.utilities, xvars)
    except SolverLimitError as exc:
        raise EngineLimitError(str(exc), len(blocked), blocked, counters.as_dict()) from exc
    raise EngineLimitError(
        f"iteration limit {iteration_limit} reached", iteration_limit, blocked, counters.as_dict()
    )


@dataclass
class VerifyReport:
    fairness: str
    fair: bool
    envious_pairs: list = field(default_factory=list)
    removal_violations: list = field(default_factory=list)
    efficient: bool = True
    dominator: Allocation | None = None
    profile: UtilityProfile | None = None
    b: tuple = ()

    @property
    def ok(self) -> bool:
        return self.fair and self.efficient

    def to_dict(self) -> dict:
        doc = {
            "fairness": {
                "notion": self.fairness,
                "holds": self.fair,
                "envious_pairs": [[a, b, str(d)] for a, b, d in self.envious_pairs],
            },
            "efficiency": {"holds": self.efficient},
            "profile": [str(v) for v in self.profile.per_agent],
            "welfare": str(self.profile.welfare),
            "b": [str(v) for v in self.b],
        }
        if self.fairness != "EF":
            doc["fairness"]["removal_violations"] = [[a, b, str(d)] for a, b, d in self.removal_violations]
        if self.dominator is not None:
            doc["efficiency"]["dominator"] = [[str(v) for v in row] for row in self.dominator.entries]
        return doc


def verify(inst: Instance, alloc: Allocation, limits: Limits | None = None) -> VerifyReport:
    """Check fairness and Pareto-efficiency of a concrete allocation.

    An inefficient allocation is reported with a welfare-maximal dominator,
    itself Pareto-efficient.
    """
    check_allocation(inst, alloc)
    envy = is_envy_free(inst, alloc)
    if inst.fairness == "EF":
        violations: list = []
        fair = envy.envy_free
    else:
        violations = ef1_violations(inst, alloc) if inst.fairness == "EF1" else efx_violations(inst, alloc)
        fair = not violations
    p = profile_of(inst, alloc)
    dominator = max_welfare_dominator(inst, p, limits)
    return VerifyReport(
        inst.fairness,
        fair,
        list(envy.envious_pairs),
        violations,
        dominator is None,
        dominator,
        p,
        induced_b(inst, alloc),
    )
