"""Exact linear/integer model container and its plain-text format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Union[int, Fraction]

SENSES = ("<=", "=", ">=")


def rational(value) -> Rational:
    """Normalize ``value`` to an ``int`` when integral, else a ``Fraction``.

    Floats are refused: nothing in the solve path may be inexact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return rational(Fraction(value))
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass
class Variable:
    name: str
    lo: Rational | None = 0
    hi: Rational | None = None
    integer: bool = False

    def __post_init__(self) -> None:
        self.lo = None if self.lo is None else rational(self.lo)
        self.hi = None if self.hi is None else rational(self.hi)
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"variable {self.name}: lower bound {self.lo} exceeds upper bound {self.hi}")
        if self.integer:
            for b in (self.lo, self.hi):
                if isinstance(b, Fraction):
                    raise ValueError(f"integer variable {self.name} needs integer bounds")


@dataclass
class Constraint:
    coeffs: list[Rational]
    sense: str
    rhs: Rational
    name: str = ""

    def __post_init__(self) -> None:
        if self.sense not in SENSES:
            raise ValueError(f"unknown relation {self.sense!r}")
        self.rhs = rational(self.rhs)

    def activity(self, x: Sequence[Rational]) -> Rational:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), 0)

    def satisfied_by(self, x: Sequence[Rational]) -> bool:
        lhs = self.activity(x)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class Objective:
    sense: str  # "max" or "min"
    coeffs: list[Rational]

    def value(self, x: Sequence[Rational]) -> Rational:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), 0)


@dataclass
class IlpModel:
    """Variables with bounds and integrality, dense constraint rows, optional objective.

    Rows hold one coefficient per variable; adding a variable pads every
    existing row with a zero.
    """

    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: Objective | None = None

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        for k, v in enumerate(self.variables):
            if v.name == name:
                return k
        raise KeyError(name)

    def add_variable(self, name: str, lo=0, hi=None, integer: bool = False) -> int:
        if any(v.name == name for v in self.variables):
            raise ValueError(f"duplicate variable {name!r}")
        self.variables.append(Variable(name, lo, hi, integer))
        for con in self.constraints:
            con.coeffs.append(0)
        if self.objective is not None:
            self.objective.coeffs.append(0)
        return len(self.variables) - 1

    def _row(self, terms: Mapping[int, Rational] | Sequence[Rational]) -> list[Rational]:
        if isinstance(terms, Mapping):
            row: list[Rational] = [0] * self.num_vars
            for k, c in terms.items():
                row[k] += rational(c)
            return row
        if len(terms) != self.num_vars:
            raise ValueError(f"row has {len(terms)} entries for {self.num_vars} variables")
        return [rational(c) for c in terms]

    def add_constraint(self, terms, sense: str, rhs, name: str = "") -> int:
        name = name or f"c{len(self.constraints)}"
        self.constraints.append(Constraint(self._row(terms), sense, rhs, name))
        return len(self.constraints) - 1

    def set_objective(self, sense: str, terms) -> None:
        if sense not in ("max", "min"):
            raise ValueError("objective sense must be 'max' or 'min'")
        self.objective = Objective(sense, self._row(terms))

    def copy(self) -> "IlpModel":
        return IlpModel(
            [Variable(v.name, v.lo, v.hi, v.integer) for v in self.variables],
            [Constraint(list(c.coeffs), c.sense, c.rhs, c.name) for c in self.constraints],
            None if self.objective is None else Objective(self.objective.sense, list(self.objective.coeffs)),
        )

    def is_feasible_point(self, x: Sequence[Rational], relaxed: bool = False) -> bool:
        """Exact check of bounds, integrality (unless ``relaxed``) and every constraint."""
        if len(x) != self.num_vars:
            return False
        for v, val in zip(self.variables, x):
            if v.lo is not None and val < v.lo:
                return False
            if v.hi is not None and val > v.hi:
                return False
            if v.integer and not relaxed and Fraction(val).denominator != 1:
                return False
        return all(c.satisfied_by(x) for c in self.constraints)


# ---------------------------------------------------------------------------
# text format


def format_rational(value: Rational) -> str:
    value = rational(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def _format_terms(coeffs: Sequence[Rational], names: Sequence[str]) -> str:
    parts: list[str] = []
    for c, name in zip(coeffs, names):
        if not c:
            continue
        if not parts:
            parts.append(f"{format_rational(c)} {name}")
        elif c < 0:
            parts.append(f"- {format_rational(-c)} {name}")
        else:
            parts.append(f"+ {format_rational(c)} {name}")
    return " ".join(parts) if parts else "0"


def _format_bound(value: Rational | None, inf: str) -> str:
    return inf if value is None else format_rational(value)


def write_model(model: IlpModel) -> str:
    """Deterministic text emission; empty sections are omitted."""
    names = [v.name for v in model.variables]
    lines: list[str] = []
    if model.objective is None:
        lines.append("FEASIBILITY")
    else:
        head = "MAXIMIZE" if model.objective.sense == "max" else "MINIMIZE"
        lines.append(f"{head} {_format_terms(model.objective.coeffs, names)}")
    if model.constraints:
        lines.append("SUBJECT TO")
        for con in model.constraints:
            lines.append(f"{con.name}: {_format_terms(con.coeffs, names)} {con.sense} {format_rational(con.rhs)}")
    if model.variables:
        lines.append("BOUNDS")
        for v in model.variables:
            lines.append(f"{_format_bound(v.lo, '-inf')} <= {v.name} <= {_format_bound(v.hi, 'inf')}")
    integral = [v.name for v in model.variables if v.integer]
    if integral:
        lines.append("INTEGER")
        lines.append(" ".join(integral))
    lines.append("END")
    return "\n".join(lines) + "\n"


class ModelFormatError(ValueError):
    pass


_TERM = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)\s+([A-Za-z_][A-Za-z0-9_]*)")


def _parse_terms(text: str) -> list[tuple[Rational, str]]:
    text = text.strip()
    if text == "0":
        return []
    terms = []
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None:
            raise ModelFormatError(f"cannot parse terms near {text[pos:]!r}")
        sign, coeff, name = match.groups()
        value = rational(Fraction(coeff))
        terms.append((-value if sign == "-" else value, name))
        pos = match.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return terms


def _parse_value(token: str) -> Rational | None:
    if token in ("inf", "-inf", "+inf"):
        return None
    try:
        return rational(Fraction(token))
    except ValueError:
        raise ModelFormatError(f"bad number {token!r}") from None


def read_model(text: str) -> IlpModel:
    """Parse the text emitted by :func:`write_model`."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[-1] != "END":
        raise ModelFormatError("model must end with END")
    head = lines[0]
    objective: tuple[str, list] | None = None
    if head.startswith("MAXIMIZE") or head.startswith("MINIMIZE"):
        objective = ("max" if head.startswith("MAXIMIZE") else "min", _parse_terms(head[8:]))
    elif head != "FEASIBILITY":
        raise ModelFormatError(f"unknown header {head!r}")
    section = None
    rows: list[tuple[str, list, str, Rational]] = []
    bounds: list[tuple[str, Rational | None, Rational | None]] = []
    integral: set[str] = set()
    for line in lines[1:-1]:
        if line in ("SUBJECT TO", "BOUNDS", "INTEGER"):
            section = line
            continue
        if section == "SUBJECT TO":
            name, _, body = line.partition(":")
            match = re.match(r"^(.*)\s(<=|>=|=)\s(\S+)$", body.strip())
            if not match:
                raise ModelFormatError(f"bad constraint line {line!r}")
            rhs = _parse_value(match.group(3))
            if rhs is None:
                raise ModelFormatError("infinite right-hand side")
            rows.append((name.strip(), _parse_terms(match.group(1)), match.group(2), rhs))
        elif section == "BOUNDS":
            parts = line.split()
            if len(parts) != 5 or parts[1] != "<=" or parts[3] != "<=":
                raise ModelFormatError(f"bad bound line {line!r}")
            bounds.append((parts[2], _parse_value(parts[0]), _parse_value(parts[4])))
        elif section == "INTEGER":
            integral.update(line.split())
        else:
            raise ModelFormatError(f"line outside any section: {line!r}")
    model = IlpModel()
    for name, lo, hi in bounds:
        model.add_variable(name, lo, hi, name in integral)
    index = {v.name: k for k, v in enumerate(model.variables)}

    def to_map(terms):
        out: dict[int, Rational] = {}
        for c, name in terms:
            if name not in index:
                raise ModelFormatError(f"undeclared variable {name!r}")
            out[index[name]] = out.get(index[name], 0) + c
        return out

    for name, terms, sense, rhs in rows:
        model.add_constraint(to_map(terms), sense, rhs, name)
    if objective is not None:
        model.set_objective(objective[0], to_map(objective[1]))
    return model
