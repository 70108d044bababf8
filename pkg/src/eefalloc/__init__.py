"""Exact envy-free Pareto-efficient allocation with binary-encoded multiplicities."""

from .core import (
    Allocation,
    Instance,
    InstanceError,
    ItemType,
    UtilityProfile,
    Verdict,
    make_instance,
    parse_instance,
    parse_verdict,
    profile_of,
    serialize_instance,
    serialize_verdict,
)
from .engine import EngineLimitError, solve_eef, verify

__all__ = [
    "Allocation",
    "EngineLimitError",
    "Instance",
    "InstanceError",
    "ItemType",
    "UtilityProfile",
    "Verdict",
    "make_instance",
    "parse_instance",
    "parse_verdict",
    "profile_of",
    "serialize_instance",
    "serialize_verdict",
    "solve_eef",
    "verify",
]
