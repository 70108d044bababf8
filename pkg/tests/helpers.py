"""Shared generators for the test suite."""

import itertools
import random

from eefalloc.core import make_instance

UNIT_1 = dict(utilities=[[1], [1]], multiplicities=[1])
UNIT_2 = dict(utilities=[[1, 1], [1, 1]], multiplicities=[1, 1])


def random_instance(seed, fairness="EF", ulo=0, uhi=3, max_n=3, max_m=3, max_mult=3):
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    mult = [rng.randint(0, max_mult) for _ in range(m)]
    util = [[rng.randint(ulo, uhi) for _ in range(m)] for _ in range(n)]
    return make_instance(util, mult, fairness)


def exhaustive_family():
    """n=2, m=2, multiplicities in {1,2}, utilities in {-1,0,1,2}: 1024 instances."""
    for mult in itertools.product((1, 2), repeat=2):
        for u in itertools.product((-1, 0, 1, 2), repeat=4):
            yield make_instance([list(u[:2]), list(u[2:])], list(mult), "EF")
