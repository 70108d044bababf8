"""Domain data model, validation and JSON documents.

Every number is a Python ``int`` (or ``Fraction`` inside the solver), so
multiplicities and utilities of any magnitude round-trip exactly.  Documents
accept integers either as JSON numbers or as decimal strings and always emit
decimal strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

FAIRNESS_NOTIONS = ("EF", "EF1", "EFX")

_DECIMAL = re.compile(r"^[+-]?[0-9]+$")


class InstanceError(ValueError):
    """Invalid input document or object.

    ``code`` is a stable machine-readable identifier and ``location`` a
    JSON-path-like pointer to the offending value.
    """

    def __init__(self, code: str, message: str, location: str = "$"):
        super().__init__(f"{code} at {location}: {message}")
        self.code = code
        self.location = location
        self.message = message


@dataclass(frozen=True)
class ItemType:
    name: str
    multiplicity: int


@dataclass(frozen=True)
class Instance:
    agents: tuple[str, ...]
    items: tuple[ItemType, ...]
    utilities: tuple[tuple[int, ...], ...]
    fairness: str = "EF"
    envy_graph: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        validate_instance(self)

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.items)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(it.multiplicity for it in self.items)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Directed pairs ``(a, b)`` along which agent ``a`` may envy ``b``."""
        if self.envy_graph is not None:
            return self.envy_graph
        return tuple((a, b) for a in range(self.n) for b in range(self.n) if a != b)

    def utility_bounds(self, a: int) -> tuple[int, int]:
        """Smallest and largest value agent ``a`` can assign to any bundle."""
        lo = hi = 0
        for u, mult in zip(self.utilities[a], self.multiplicities):
            if u < 0:
                lo += u * mult
            else:
                hi += u * mult
        return lo, hi

    def with_fairness(self, fairness: str) -> "Instance":
        return Instance(self.agents, self.items, self.utilities, fairness, self.envy_graph)


def make_instance(
    utilities: Sequence[Sequence[int]],
    multiplicities: Sequence[int],
    fairness: str = "EF",
    envy_graph: Iterable[Sequence[int]] | None = None,
    agents: Sequence[str] | None = None,
    item_names: Sequence[str] | None = None,
) -> Instance:
    """Convenience constructor with generated labels."""
    n, m = len(utilities), len(multiplicities)
    agents = tuple(agents) if agents is not None else tuple(f"a{k + 1}" for k in range(n))
    names = tuple(item_names) if item_names is not None else tuple(f"i{k + 1}" for k in range(m))
    items = tuple(ItemType(name, int(mult)) for name, mult in zip(names, multiplicities))
    graph = None
    if envy_graph is not None:
        graph = tuple(sorted({(int(a), int(b)) for a, b in envy_graph}))
    return Instance(agents, items, tuple(tuple(int(u) for u in row) for row in utilities), fairness, graph)


def validate_instance(inst: Instance) -> None:
    if len(inst.agents) < 1:
        raise InstanceError("dimension_mismatch", "at least one agent is required", "$.agents")
    if len(inst.items) < 1:
        raise InstanceError("dimension_mismatch", "at least one item type is required", "$.items")
    for k, item in enumerate(inst.items):
        if not isinstance(item.multiplicity, int) or isinstance(item.multiplicity, bool):
            raise InstanceError("invalid_number", "multiplicity must be an integer", f"$.items[{k}].multiplicity")
        if item.multiplicity < 0:
            raise InstanceError("negative_multiplicity", "multiplicity must be >= 0", f"$.items[{k}].multiplicity")
    if len(inst.utilities) != len(inst.agents):
        raise InstanceError(
            "dimension_mismatch",
            f"{len(inst.utilities)} utility rows for {len(inst.agents)} agents",
            "$.utilities",
        )
    for a, row in enumerate(inst.utilities):
        if len(row) != len(inst.items):
            raise InstanceError(
                "dimension_mismatch", f"{len(row)} utilities for {len(inst.items)} item types", f"$.utilities[{a}]"
            )
    if inst.fairness not in FAIRNESS_NOTIONS:
        raise InstanceError("unknown_fairness", f"fairness must be one of {FAIRNESS_NOTIONS}", "$.fairness")
    if inst.fairness != "EF":
        for a, row in enumerate(inst.utilities):
            for i, u in enumerate(row):
                if u < 0:
                    raise InstanceError(
                        "unsupported_combination",
                        f"{inst.fairness} requires nonnegative utilities",
                        f"$.utilities[{a}][{i}]",
                    )
    if inst.envy_graph is not None:
        n = len(inst.agents)
        for k, (a, b) in enumerate(inst.envy_graph):
            if not (0 <= a < n and 0 <= b < n):
                raise InstanceError("invalid_envy_graph", f"agent index out of range in ({a}, {b})", f"$.envy_graph[{k}]")
            if a == b:
                raise InstanceError("invalid_envy_graph", f"self-loop ({a}, {a})", f"$.envy_graph[{k}]")


@dataclass(frozen=True)
class Allocation:
    """``entries[a][i]`` copies of item type ``i`` go to agent ``a``."""

    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "Allocation":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))

    @classmethod
    def zeros(cls, n: int, m: int) -> "Allocation":
        return cls(tuple((0,) * m for _ in range(n)))

    def __getitem__(self, a: int) -> tuple[int, ...]:
        return self.entries[a]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.entries for v in row)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def check_allocation(inst: Instance, alloc: Allocation) -> None:
    """Raise ``InstanceError`` unless ``alloc`` is a valid allocation for ``inst``."""
    if len(alloc.entries) != inst.n:
        raise InstanceError("dimension_mismatch", f"{len(alloc.entries)} rows for {inst.n} agents", "$.allocation")
    for a, row in enumerate(alloc.entries):
        if len(row) != inst.m:
            raise InstanceError("dimension_mismatch", f"{len(row)} entries for {inst.m} item types", f"$.allocation[{a}]")
        for i, v in enumerate(row):
            if v < 0:
                raise InstanceError("negative_allocation", "entries must be >= 0", f"$.allocation[{a}][{i}]")
    for i, mult in enumerate(inst.multiplicities):
        total = sum(row[i] for row in alloc.entries)
        if total > mult:
            raise InstanceError(
                "exceeds_multiplicity", f"{total} copies of item type {i} allocated, only {mult} exist", f"$.allocation[*][{i}]"
            )


@dataclass(frozen=True)
class UtilityProfile:
    per_agent: tuple[int, ...]
    welfare: int = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        total = sum(self.per_agent)
        if self.welfare is None:
            object.__setattr__(self, "welfare", total)
        elif self.welfare != total:
            raise ValueError(f"welfare {self.welfare} != sum of per-agent utilities {total}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "UtilityProfile":
        return cls(tuple(int(v) for v in values))

    def __len__(self) -> int:
        return len(self.per_agent)

    def __getitem__(self, a: int) -> int:
        return self.per_agent[a]


def bundle_value(utility_row: Sequence[int], bundle: Sequence[int]) -> int:
    return sum(u * x for u, x in zip(utility_row, bundle))


def profile_of(inst: Instance, alloc: Allocation) -> UtilityProfile:
    check_allocation(inst, alloc)
    return UtilityProfile(tuple(bundle_value(inst.utilities[a], alloc[a]) for a in range(inst.n)))


# ---------------------------------------------------------------------------
# documents


def _parse_int(value: Any, location: str) -> int:
    if isinstance(value, bool):
        raise InstanceError("invalid_number", "booleans are not numbers", location)
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.match(value.strip()):
        return int(value.strip())
    raise InstanceError("invalid_number", f"expected an integer or decimal string, got {value!r}", location)


def _expect(cond: bool, message: str, location: str, code: str = "malformed") -> None:
    if not cond:
        raise InstanceError(code, message, location)


def _load(text: str | bytes) -> Any:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InstanceError("malformed", f"not a JSON document: {exc}") from None


def instance_from_dict(doc: Any) -> Instance:
    _expect(isinstance(doc, dict), "instance document must be an object", "$")
    for key in ("agents", "items", "utilities"):
        _expect(key in doc, f"missing key {key!r}", f"$.{key}", "missing_key")
    agents = doc["agents"]
    _expect(isinstance(agents, list) and all(isinstance(a, str) for a in agents), "agents must be a list of strings", "$.agents")
    raw_items = doc["items"]
    _expect(isinstance(raw_items, list), "items must be a list", "$.items")
    items = []
    for k, it in enumerate(raw_items):
        loc = f"$.items[{k}]"
        _expect(isinstance(it, dict) and "name" in it and "multiplicity" in it, "item needs name and multiplicity", loc)
        _expect(isinstance(it["name"], str), "item name must be a string", loc + ".name")
        items.append(ItemType(it["name"], _parse_int(it["multiplicity"], loc + ".multiplicity")))
    rows = doc["utilities"]
    _expect(isinstance(rows, list) and all(isinstance(r, list) for r in rows), "utilities must be a list of rows", "$.utilities")
    utilities = tuple(
        tuple(_parse_int(v, f"$.utilities[{a}][{i}]") for i, v in enumerate(row)) for a, row in enumerate(rows)
    )
    fairness = doc.get("fairness", "EF")
    _expect(isinstance(fairness, str), "fairness must be a string", "$.fairness")
    graph = None
    if doc.get("envy_graph") is not None:
        raw = doc["envy_graph"]
        _expect(isinstance(raw, list), "envy_graph must be a list of pairs", "$.envy_graph")
        pairs = set()
        for k, pair in enumerate(raw):
            loc = f"$.envy_graph[{k}]"
            if not (isinstance(pair, list) and len(pair) == 2):
                raise InstanceError("invalid_envy_graph", "edges must be [from, to] pairs", loc)
            pairs.add((_parse_int(pair[0], loc + "[0]"), _parse_int(pair[1], loc + "[1]")))
        graph = tuple(sorted(pairs))
    return Instance(tuple(agents), tuple(items), utilities, fairness, graph)


def parse_instance(text: str | bytes) -> Instance:
    return instance_from_dict(_load(text))


def instance_to_dict(inst: Instance) -> dict:
    doc: dict[str, Any] = {
        "agents": list(inst.agents),
        "items": [{"name": it.name, "multiplicity": str(it.multiplicity)} for it in inst.items],
        "utilities": [[str(u) for u in row] for row in inst.utilities],
        "fairness": inst.fairness,
    }
    if inst.envy_graph is not None:
        doc["envy_graph"] = [[a, b] for a, b in inst.envy_graph]
    return doc


def dumps(doc: Any) -> str:
    """Canonical JSON text used for every emitted document."""
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def serialize_instance(inst: Instance) -> str:
    return dumps(instance_to_dict(inst))


def matrix_to_strings(rows: Iterable[Iterable[int]]) -> list[list[str]]:
    return [[str(v) for v in row] for row in rows]


def parse_allocation(doc: Any, location: str = "$.allocation") -> Allocation:
    """Read an allocation from a bare matrix or from an object with an ``allocation`` key."""
    if isinstance(doc, dict):
        _expect("allocation" in doc, "missing key 'allocation'", location, "missing_key")
        doc = doc["allocation"]
    _expect(isinstance(doc, list) and all(isinstance(r, list) for r in doc), "allocation must be a matrix", location)
    return Allocation(tuple(tuple(_parse_int(v, f"{location}[{a}][{i}]") for i, v in enumerate(row)) for a, row in enumerate(doc)))


@dataclass(frozen=True)
class Verdict:
    """Outcome of an EEF decision.

    For ``YES`` the certificate is a fair, Pareto-efficient allocation and
    ``certificate_profile`` its profile.  For ``NO`` there is no certificate;
    ``certificate_profile`` then describes the welfare-maximal fair
    allocation examined first, and ``blocked_profiles`` lists the recorded
    Pareto-efficient profiles that together dominate every fair allocation.
    """

    answer: str
    certificate: Allocation | None
    certificate_profile: UtilityProfile
    blocked_profiles: tuple[UtilityProfile, ...] = ()
    iterations: int = 0
    stats: dict = field(default_factory=dict, compare=True)

    def __post_init__(self) -> None:
        if self.answer not in ("YES", "NO"):
            raise ValueError(f"answer must be YES or NO, not {self.answer!r}")
        if (self.answer == "YES") != (self.certificate is not None):
            raise ValueError("a certificate is present exactly for YES verdicts")


def verdict_to_dict(v: Verdict) -> dict:
    doc: dict[str, Any] = {"answer": v.answer}
    if v.certificate is not None:
        doc["allocation"] = matrix_to_strings(v.certificate.entries)
    doc["profile"] = [str(p) for p in v.certificate_profile.per_agent]
    doc["welfare"] = str(v.certificate_profile.welfare)
    doc["iterations"] = v.iterations
    doc["blocked_profiles"] = [[str(p) for p in q.per_agent] for q in v.blocked_profiles]
    doc["stats"] = {k: v.stats[k] for k in sorted(v.stats)}
    return doc


def serialize_verdict(v: Verdict) -> str:
    return dumps(verdict_to_dict(v))


def verdict_from_dict(doc: Any) -> Verdict:
    _expect(isinstance(doc, dict), "verdict document must be an object", "$")
    for key in ("answer", "profile", "welfare", "iterations"):
        _expect(key in doc, f"missing key {key!r}", f"$.{key}", "missing_key")
    answer = doc["answer"]
    cert = parse_allocation(doc["allocation"]) if answer == "YES" else None
    profile = UtilityProfile(
        tuple(_parse_int(p, f"$.profile[{k}]") for k, p in enumerate(doc["profile"])),
        _parse_int(doc["welfare"], "$.welfare"),
    )
    blocked = tuple(
        UtilityProfile(tuple(_parse_int(p, f"$.blocked_profiles[{j}][{k}]") for k, p in enumerate(q)))
        for j, q in enumerate(doc.get("blocked_profiles", []))
    )
    stats = dict(doc.get("stats", {}))
    return Verdict(answer, cert, profile, blocked, _parse_int(doc["iterations"], "$.iterations"), stats)


def parse_verdict(text: str | bytes) -> Verdict:
    return verdict_from_dict(_load(text))
