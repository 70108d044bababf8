import pytest
from helpers import random_instance
from hypothesis import given, settings
from hypothesis import strategies as st
from lattice import lattice_points

from eefalloc.core import Allocation, InstanceError, make_instance
from eefalloc.fairness import (
    encode_fairness,
    fair_model,
    is_ef1,
    is_efx,
    is_envy_free,
    is_fair,
)
from eefalloc.oracle import count_allocations, enumerate_allocations
from eefalloc.solver import IlpModel, ilp_solve

A = Allocation.of


def test_empty_bundles_are_envy_free():
    inst = make_instance([[1, 3], [2, 0], [5, 5]], [2, 1])
    assert is_envy_free(inst, Allocation.zeros(3, 2)).envy_free


def test_envy_report_pair_and_deficit():
    inst = make_instance([[1], [1]], [1])
    report = is_envy_free(inst, A([[1], [0]]))
    assert report.envious_pairs == ((1, 0, 1),)
    assert not report.envy_free


def test_envy_graph_restricts_edges():
    inst = make_instance([[1], [1]], [1], envy_graph=[(0, 1)])
    assert is_envy_free(inst, A([[1], [0]])).envy_free


def test_ef1_examples():
    assert is_ef1(make_instance([[1], [1]], [1], "EF1"), A([[1], [0]]))
    assert not is_ef1(make_instance([[1], [1]], [3], "EF1"), A([[3], [0]]))


def test_efx_examples():
    inst = make_instance([[1, 1], [3, 1]], [1, 1], "EFX")
    assert not is_efx(inst, A([[1, 1], [0, 0]]))
    assert is_efx(make_instance([[1], [1]], [2], "EFX"), A([[1], [1]]))


def test_efx_ignores_zero_valued_items():
    # removing the zero-valued item would leave envy 2; only the valued one counts
    inst = make_instance([[0, 0], [2, 0]], [1, 1], "EFX")
    assert is_efx(inst, A([[1, 1], [0, 0]]))
    assert is_ef1(inst.with_fairness("EF1"), A([[1, 1], [0, 0]]))


def test_removal_notions_reject_negative_utilities():
    inst = make_instance([[-1], [1]], [1], "EF")
    with pytest.raises(InstanceError):
        is_ef1(inst, A([[0], [1]]))
    with pytest.raises(InstanceError):
        is_efx(inst, A([[0], [1]]))


def test_ef_encoding_one_row_per_edge():
    inst = make_instance([[1, 2], [3, 1]], [1, 1])
    model = IlpModel()
    from eefalloc.fairness import add_allocation_vars

    xvars = add_allocation_vars(model, inst)
    rows = encode_fairness(inst, model, xvars)
    assert len(rows) == 2
    # a1: z_a1 . u_a1 - z_a2 . u_a1 >= 0
    c = model.constraints[rows[0]]
    assert c.sense == ">=" and c.rhs == 0
    assert c.coeffs == [1, 2, -1, -2]


def test_ef_empty_graph_emits_nothing():
    inst = make_instance([[1], [1]], [1], envy_graph=[])
    model, _ = fair_model(inst)
    assert all(not c.name.startswith("ef") for c in model.constraints)
    assert len(list(lattice_points(model))) == 3


def test_ef1_encoding_solutions_small():
    inst = make_instance([[1], [1]], [1], "EF1")
    model, xvars = fair_model(inst)
    got = {tuple(p[xvars[a][0]] for a in range(2)) for p in lattice_points(model)}
    assert got == {(0, 0), (1, 0), (0, 1)}


def _encoded(inst, model, xvars, alloc):
    pinned = model.copy()
    for a in range(inst.n):
        for i in range(inst.m):
            pinned.add_constraint({xvars[a][i]: 1}, "=", alloc[a][i])
    return ilp_solve(pinned).status == "feasible"


@pytest.mark.parametrize("fairness, lo", [("EF", -3), ("EF", 0), ("EF1", 0), ("EFX", 0)])
def test_encoder_matches_predicate(fairness, lo):
    checked = 0
    for seed in range(400):
        inst = random_instance(seed, fairness, lo, 3)
        if count_allocations(inst) > 120:
            continue
        model, xvars = fair_model(inst)
        for alloc in enumerate_allocations(inst):
            assert _encoded(inst, model, xvars, alloc) == is_fair(inst, alloc), (inst, alloc)
        checked += 1
        if checked == 40:
            break
    assert checked == 40


def test_encoder_on_graph_instances():
    for seed in range(30):
        base = random_instance(seed, ["EF", "EF1", "EFX"][seed % 3], 0, 3)
        if count_allocations(base) > 120 or base.n < 2:
            continue
        edges = [(a, b) for a in range(base.n) for b in range(base.n) if a != b][: seed % 4 + 1]
        inst = make_instance([list(r) for r in base.utilities], list(base.multiplicities), base.fairness, edges)
        model, xvars = fair_model(inst)
        for alloc in enumerate_allocations(inst):
            assert _encoded(inst, model, xvars, alloc) == is_fair(inst, alloc)


@st.composite
def case(draw, fairness="EF"):
    n = draw(st.integers(2, 3))
    m = draw(st.integers(1, 3))
    lo = -3 if fairness == "EF" else 0
    util = [[draw(st.integers(lo, 3)) for _ in range(m)] for _ in range(n)]
    mult = [draw(st.integers(0, 3)) for _ in range(m)]
    rows = []
    left = list(mult)
    for _ in range(n):
        row = [draw(st.integers(0, left[i])) for i in range(m)]
        left = [l - x for l, x in zip(left, row)]
        rows.append(row)
    return make_instance(util, mult, fairness), A(rows)


@given(case("EF1"))
def test_ef_implies_removal_notions(c):
    inst, alloc = c
    if is_envy_free(inst, alloc).envy_free:
        assert is_ef1(inst, alloc) and is_efx(inst, alloc)
    if is_efx(inst, alloc):
        assert is_ef1(inst, alloc)


@given(case(), st.data())
def test_dropping_edges_keeps_envy_freeness(c, data):
    inst, alloc = c
    edges = list(inst.edges())
    kept = data.draw(st.lists(st.sampled_from(edges), unique=True))
    sub = make_instance([list(r) for r in inst.utilities], list(inst.multiplicities), "EF", kept)
    if is_envy_free(inst, alloc).envy_free:
        assert is_envy_free(sub, alloc).envy_free


@settings(max_examples=60)
@given(case("EF1"), st.integers(0, 2), st.sampled_from([2, 7, 10**6]))
def test_row_scaling_invariance(c, agent, factor):
    inst, alloc = c
    agent %= inst.n
    util = [[u * factor if a == agent else u for u in row] for a, row in enumerate(inst.utilities)]
    for notion, pred in (("EF", lambda i, x: is_envy_free(i, x).envy_free), ("EF1", is_ef1), ("EFX", is_efx)):
        before = pred(inst.with_fairness(notion), alloc)
        after = pred(make_instance(util, list(inst.multiplicities), notion), alloc)
        assert before == after
