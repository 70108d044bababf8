"""Compare the compiled tableau kernels with the pure-Python fallback.

Two measurements:

* ``kernels``: repeated Bareiss pivots on random integer tableaux, calling
  both kernel modules directly;
* ``engine``: the decision procedure over a fixed batch of seeded
  instances, once per backend, each in a fresh interpreter so that the
  backend choice made at import time is honoured.

Usage: python3 benchmarks/bench_kernels.py [--seeds N] [--rows R] [--cols C]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

ENGINE_SNIPPET = r"""
import json, random, sys, time
from eefalloc.core import make_instance
from eefalloc.engine import solve_eef
from eefalloc.solver import kernels

seeds = int(sys.argv[1])
batch = []
for seed in range(seeds):
    rng = random.Random(seed)
    n, m = rng.randint(2, 3), rng.randint(2, 3)
    mult = [rng.randint(1, 3) for _ in range(m)]
    util = [[rng.randint(0, 3) for _ in range(m)] for _ in range(n)]
    batch.append(make_instance(util, mult, ("EF", "EF1", "EFX")[seed % 3]))
t0 = time.perf_counter()
answers = [solve_eef(inst).answer for inst in batch]
print(json.dumps({"backend": kernels.BACKEND, "seconds": time.perf_counter() - t0, "answers": answers}))
"""


def bench_kernels(rows: int, cols: int, reps: int) -> dict:
    from eefalloc.solver import _pykernels

    try:
        from eefalloc.solver import _ckernels
    except ImportError:
        _ckernels = None
    rng = random.Random(0)
    tableaux = []
    for _ in range(reps):
        T = [[rng.randint(-50, 50) for _ in range(cols)] for _ in range(rows)]
        r, s = rng.randrange(rows), rng.randrange(cols - 1)
        T[r][s] = rng.randint(1, 50)
        tableaux.append((T, r, s))
    out = {}
    for name, mod in (("python", _pykernels), ("cython", _ckernels)):
        if mod is None:
            continue
        work = [([row[:] for row in T], r, s) for T, r, s in tableaux]
        t0 = time.perf_counter()
        for T, r, s in work:
            D = 1
            # a short chain of pivots so denominators and entries grow
            for k in range(3):
                rr = (r + k) % rows
                ss = (s + k) % (cols - 1)
                if T[rr][ss] <= 0:
                    continue
                D = mod.pivot(T, rr, ss, D)
        out[name] = time.perf_counter() - t0
    return out


def bench_engine(seeds: int) -> dict:
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, EEF_PURE_PYTHON=pure)
        proc = subprocess.run(
            [sys.executable, "-c", ENGINE_SNIPPET, str(seeds)], env=env, capture_output=True, text=True, check=True
        )
        res = json.loads(proc.stdout)
        out[res["backend"]] = res
    answers = {k: v["answers"] for k, v in out.items()}
    if len(set(map(tuple, answers.values()))) > 1:
        raise SystemExit("backends disagree on answers")
    return {k: v["seconds"] for k, v in out.items()}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=150)
    ap.add_argument("--rows", type=int, default=40)
    ap.add_argument("--cols", type=int, default=60)
    ap.add_argument("--reps", type=int, default=300)
    args = ap.parse_args()

    k = bench_kernels(args.rows, args.cols, args.reps)
    e = bench_engine(args.seeds)
    print(f"{'benchmark':<28}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for label, res in ((f"pivots {args.rows}x{args.cols} x{args.reps}", k), (f"engine, {args.seeds} instances", e)):
        py, cy = res.get("python"), res.get("cython")
        speed = f"{py / cy:.2f}x" if py and cy else "n/a"
        cys = f"{cy:.3f}" if cy else "n/a"
        print(f"{label:<28}{py:>10.3f}{cys:>10}{speed:>9}")


if __name__ == "__main__":
    main()
