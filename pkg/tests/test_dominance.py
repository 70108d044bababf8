from helpers import random_instance
from hypothesis import given
from hypothesis import strategies as st
from lattice import lattice_points

from eefalloc.core import Allocation, UtilityProfile, make_instance, profile_of
from eefalloc.dominance import (
    encode_domination,
    find_dominator,
    is_pareto_efficient,
    max_welfare_dominator,
    pareto_dominates,
    profile_dominates,
)
from eefalloc.oracle import count_allocations, enumerate_allocations, pareto_frontier

A = Allocation.of
UNIT = make_instance([[1], [1]], [1])


def test_profile_dominance_basics():
    assert not profile_dominates((1, 2), (1, 2))
    assert profile_dominates((1, 2), (1, 1))
    assert not profile_dominates((3, 1), (2, 2))
    assert not profile_dominates((2, 2), (3, 1))


def test_pareto_dominates_allocations():
    assert pareto_dominates(UNIT, A([[1], [0]]), A([[0], [0]]))
    assert not pareto_dominates(UNIT, A([[1], [0]]), A([[0], [1]]))


def test_domination_system_solutions():
    model, xvars = encode_domination(UNIT, UtilityProfile((0, 0)))
    sols = {tuple(p[xvars[a][0]] for a in range(2)) for p in lattice_points(model)}
    assert sols == {(1, 0), (0, 1)}
    model, _ = encode_domination(UNIT, UtilityProfile((1, 0)))
    assert not list(lattice_points(model))


def test_find_dominator_examples():
    x = find_dominator(UNIT, UtilityProfile((0, 0)))
    assert sum(x.flat()) == 1
    assert find_dominator(UNIT, UtilityProfile((1, 0))) is None
    assert find_dominator(UNIT, UtilityProfile((5, 0))) is None


def test_max_welfare_dominator_examples():
    x = max_welfare_dominator(UNIT, UtilityProfile((0, 0)))
    assert profile_of(UNIT, x).welfare == 1
    assert is_pareto_efficient(UNIT, x)
    single = make_instance([[1]], [5])
    assert max_welfare_dominator(single, UtilityProfile((2,))).to_lists() == [[5]]
    assert max_welfare_dominator(UNIT, UtilityProfile((0, 1))) is None


def test_pareto_efficiency_examples():
    unit2 = make_instance([[1, 1], [1, 1]], [1, 1])
    assert is_pareto_efficient(unit2, A([[1, 0], [0, 1]]))
    assert not is_pareto_efficient(unit2, Allocation.zeros(2, 2))
    assert is_pareto_efficient(UNIT, A([[0], [1]]))


def test_dominator_queries_match_enumeration():
    for seed in range(80):
        inst = random_instance(seed, "EF", -3, 3)
        if count_allocations(inst) > 400:
            continue
        allocs = list(enumerate_allocations(inst))
        profiles = [profile_of(inst, x).per_agent for x in allocs]
        frontier = set(pareto_frontier(profiles))
        for p in set(profiles):
            exists = any(profile_dominates(q, p) for q in profiles)
            found = find_dominator(inst, UtilityProfile(p))
            assert (found is not None) == exists
            if found is not None:
                assert profile_dominates(profile_of(inst, found).per_agent, p)
            best = max_welfare_dominator(inst, UtilityProfile(p))
            if best is not None:
                assert profile_of(inst, best).per_agent in frontier


@st.composite
def profiles(draw):
    n = draw(st.integers(1, 4))
    vec = st.lists(st.integers(-5, 5), min_size=n, max_size=n)
    return tuple(draw(vec)), tuple(draw(vec)), tuple(draw(vec))


@given(profiles())
def test_dominance_is_a_strict_order(ps):
    p, q, r = ps
    assert not profile_dominates(p, p)
    if profile_dominates(p, q):
        assert not profile_dominates(q, p)
        assert sum(p) > sum(q)
        if profile_dominates(q, r):
            assert profile_dominates(p, r)
