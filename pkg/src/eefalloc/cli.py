"""Command-line interface.

Exit codes: 0 decided (YES or NO alike) / verification passed, 1 verification
failed, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .core import (
    InstanceError,
    dumps,
    instance_from_dict,
    instance_to_dict,
    make_instance,
    parse_allocation,
    serialize_instance,
    verdict_to_dict,
)
from .engine import DEFAULT_ITERATION_LIMIT, EngineLimitError, solve_eef, verify
from .pilp import build_system, export_system
from .solver import DEFAULT_NODE_LIMIT, DEFAULT_PIVOT_LIMIT, Limits, SolverLimitError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class _InputError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}: malformed document: {exc}") from None


def _load_instance(path: str, fairness: str | None):
    doc = _read_json(path)
    if fairness is not None and isinstance(doc, dict):
        doc = dict(doc, fairness=fairness)
    return instance_from_dict(doc)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _limits(args) -> Limits:
    return Limits(node_limit=args.node_limit, pivot_limit=args.pivot_limit)


def _say(args, message: str) -> None:
    if not getattr(args, "quiet", False):
        print(message, file=sys.stderr)


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance, args.fairness)
    try:
        v = solve_eef(inst, _limits(args), args.iterations)
    except EngineLimitError as exc:
        doc = {
            "status": "limit",
            "reason": str(exc),
            "iterations": exc.iterations,
            "blocked_profiles": [[str(p) for p in q.per_agent] for q in exc.blocked_profiles],
            "stats": exc.stats,
        }
        _emit(dumps(doc), args.out)
        _say(args, f"limit: {exc}")
        return EXIT_LIMIT
    _emit(dumps(verdict_to_dict(v)), args.out)
    _say(args, f"{v.answer} after {v.iterations} iteration(s)")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance, args.fairness)
    alloc = parse_allocation(_read_json(args.allocation))
    try:
        report = verify(inst, alloc, _limits(args))
    except SolverLimitError as exc:
        _say(args, f"limit: {exc}")
        return EXIT_LIMIT
    _emit(dumps(report.to_dict()), args.out)
    if not report.fair:
        _say(args, f"{inst.fairness} fails")
    if not report.efficient:
        _say(args, "not Pareto-efficient; dominator: " + json.dumps(report.dominator.to_lists()))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_brute(args) -> int:
    inst = _load_instance(args.instance, args.fairness)
    try:
        v, census = oracle.brute_eef(inst, args.enum_cap, args.jobs)
    except oracle.EnumerationCapError as exc:
        _emit(dumps({"status": "limit", "reason": str(exc), "count": str(exc.count)}), args.out)
        _say(args, f"limit: {exc}")
        return EXIT_LIMIT
    doc = verdict_to_dict(v)
    doc["census"] = census.to_dict()
    _emit(dumps(doc), args.out)
    _say(args, f"{v.answer}; census {census.to_dict()}")
    return EXIT_OK


def generate_instance(n: int, m: int, mult_range, util_range, seed: int, fairness: str = "EF"):
    """Seeded instance: PCG64 draws, multiplicities first, then utilities row-major."""
    for lo, hi in (mult_range, util_range):
        if lo > hi:
            raise _InputError(f"empty range [{lo}, {hi}]")
    if mult_range[0] < 0:
        raise _InputError("multiplicities must be nonnegative")
    if n < 1 or m < 1:
        raise _InputError("n and m must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    mult = [int(rng.integers(mult_range[0], mult_range[1], endpoint=True)) for _ in range(m)]
    util = [[int(rng.integers(util_range[0], util_range[1], endpoint=True)) for _ in range(m)] for _ in range(n)]
    return make_instance(util, mult, fairness)


def cmd_gen(args) -> int:
    inst = generate_instance(args.n, args.m, args.mult, args.util, args.seed, args.fairness or "EF")
    _emit(serialize_instance(inst), args.out)
    return EXIT_OK


def cmd_export(args) -> int:
    inst = _load_instance(args.instance, args.fairness)
    files = export_system(build_system(inst))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out_dir / name).write_text(text, encoding="utf-8")
    _say(args, f"wrote {', '.join(files)} to {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eefalloc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, limits=True):
        p.add_argument("--fairness", choices=["EF", "EF1", "EFX"], help="override the document's notion")
        p.add_argument("--out", help="write the document here instead of stdout")
        p.add_argument("--quiet", action="store_true", help="no diagnostics on stderr")
        if limits:
            p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
            p.add_argument("--pivot-limit", type=int, default=DEFAULT_PIVOT_LIMIT)

    p = sub.add_parser("solve", help="decide EEF existence")
    p.add_argument("instance")
    common(p)
    p.add_argument("--iterations", type=int, default=DEFAULT_ITERATION_LIMIT)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check fairness and efficiency of an allocation")
    p.add_argument("instance")
    p.add_argument("allocation", help="matrix document or a verdict document")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brute", help="decide by exhaustive enumeration")
    p.add_argument("instance")
    common(p, limits=False)
    p.add_argument("--enum-cap", type=int, default=None, help="default: $EEF_ENUM_CAP or 10^7")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mult", type=int, nargs=2, metavar=("LO", "HI"), default=[1, 3])
    p.add_argument("--util", type=int, nargs=2, metavar=("LO", "HI"), default=[0, 3])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--fairness", choices=["EF", "EF1", "EFX"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export", help="write the A-system, Q and a manifest")
    p.add_argument("instance")
    p.add_argument("--fairness", choices=["EF", "EF1", "EFX"])
    p.add_argument("--out-dir", default=".")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, _InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
