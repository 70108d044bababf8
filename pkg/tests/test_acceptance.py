"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time

import pytest
from helpers import exhaustive_family, random_instance
from lattice import brute_optimum

from eefalloc import cli
from eefalloc.core import make_instance, serialize_instance, serialize_verdict
from eefalloc.engine import solve_eef
from eefalloc.fairness import is_envy_free
from eefalloc.oracle import brute_eef, brute_pilp_sentence, enumerate_allocations
from eefalloc.pilp import build_system, induced_b, q_member, verify_certificate
from eefalloc.solver import IlpModel, ilp_solve, lp_solve

SEEDS = 500
BINARY_SIZES = [10**3, 10**6, 10**9, 10**12]


@pytest.fixture(scope="module")
def family():
    return [(inst, solve_eef(inst)) for inst in exhaustive_family()]


def _random_configs():
    return [("EF", 0, 3), ("EF1", 0, 3), ("EFX", 0, 3), ("EF", -3, 3)]


@pytest.fixture(scope="module")
def randomized():
    out = []
    for fairness, lo, hi in _random_configs():
        for seed in range(SEEDS):
            inst = random_instance(seed, fairness, lo, hi)
            out.append((inst, solve_eef(inst)))
    return out


@pytest.fixture(scope="module")
def binary():
    out = []
    for size in BINARY_SIZES:
        for m1 in (size, size + 1):
            inst = make_instance([[1], [1]], [m1])
            t0 = time.perf_counter()
            v = solve_eef(inst)
            out.append((inst, v, time.perf_counter() - t0))
    return out


def test_criterion_1_exhaustive_family(criterion, family):
    with criterion(1, "exhaustive EF family, engine = oracle"):
        assert len(family) == 1024
        bad = [inst for inst, v in family if brute_eef(inst)[0].answer != v.answer]
        assert not bad, f"{len(bad)} disagreements, first {serialize_instance(bad[0])}"


def test_criterion_2_randomized(criterion, randomized):
    with criterion(2, f"randomized EF/EF1/EFX oracle equivalence ({len(randomized)} instances)"):
        bad = [inst for inst, v in randomized if brute_eef(inst)[0].answer != v.answer]
        assert not bad, f"{len(bad)} disagreements, first {serialize_instance(bad[0])}"


def test_criterion_3_pilp_duality(criterion, family):
    with criterion(3, "PILP sentence = negated engine verdict; YES certificates verify"):
        for inst, v in family:
            assert brute_pilp_sentence(inst) == (v.answer == "NO"), serialize_instance(inst)
            if v.answer == "YES":
                sys_ = build_system(inst)
                assert verify_certificate(sys_, induced_b(inst, v.certificate), v.certificate)


def test_criterion_4_binary_multiplicities(criterion, binary):
    with criterion(4, "m1 up to 10^12+1: even YES, odd NO, each under 5 s"):
        for inst, v, seconds in binary:
            m1 = inst.multiplicities[0]
            assert v.answer == ("YES" if m1 % 2 == 0 else "NO"), m1
            assert seconds < 5, (m1, seconds)
            if v.answer == "YES":
                assert v.certificate.to_lists() == [[m1 // 2], [m1 // 2]]


def test_criterion_5_certificates_replay(criterion, family, randomized, binary, tmp_path):
    cases = [(i, v) for i, v in family] + randomized + [(i, v) for i, v, _ in binary]
    with criterion(5, "every YES verdict from criteria 1-4 passes cmd_verify"):
        replayed = 0
        for k, (inst, v) in enumerate(cases):
            if v.answer != "YES":
                continue
            ipath, vpath = tmp_path / f"i{k}.json", tmp_path / f"v{k}.json"
            ipath.write_text(serialize_instance(inst))
            vpath.write_text(serialize_verdict(v))
            code = cli.main(["verify", str(ipath), str(vpath), "--quiet", "--out", str(tmp_path / "report.json")])
            assert code == 0, serialize_instance(inst)
            replayed += 1
        assert replayed > 0


def test_criterion_6_structure(criterion):
    with criterion(6, "PILP dimensions on 50 instances; membership equivalence by enumeration"):
        for seed in range(50):
            inst = random_instance(seed, "EF", -3, 3)
            n, m = inst.n, inst.m
            s = build_system(inst)
            assert s.rows == m + m * n + n + 1
            assert all(len(row) == m * n for row in s.A)
            assert s.columns == m * n
            assert s.q_dimension == m + 2 * m * n + n + 1
            for z in enumerate_allocations(inst):
                b = induced_b(inst, z)
                assert q_member(s, b, z) == is_envy_free(inst, z).envy_free
                # b is pinned by z: any single-coordinate change leaves Q
                for k in range(len(b)):
                    moved = list(b)
                    moved[k] += 1
                    assert not q_member(s, moved, z)


def _random_model(rng):
    model = IlpModel()
    nv = rng.randint(1, 4)
    for j in range(nv):
        lo = rng.randint(-5, 5)
        model.add_variable(f"v{j}", lo, min(5, lo + rng.randint(0, 4)), integer=True)
    for k in range(rng.randint(0, 5)):
        coeffs = [rng.randint(-3, 3) for _ in range(nv)]
        model.add_constraint(coeffs, rng.choice(["<=", ">=", "="]), rng.randint(-4, 6), f"c{k}")
    if rng.random() < 0.85:
        model.set_objective(rng.choice(["max", "min"]), [rng.randint(-4, 4) for _ in range(nv)])
    return model


def test_criterion_7_solver(criterion):
    with criterion(7, "ilp_solve = lattice enumeration on 300 models; LP exact; deterministic"):
        rng = random.Random(7)
        for _ in range(300):
            model = _random_model(rng)
            status, best = brute_optimum(model)
            out = ilp_solve(model)
            assert out.status == status, (out.status, status)
            if status != "infeasible":
                assert model.is_feasible_point(out.assignment)
                assert all(float(x).is_integer() for x in out.assignment)
                if best is not None:
                    assert out.objective == best
            lp = lp_solve(model)
            if lp.status in ("optimal", "feasible"):
                assert model.is_feasible_point(lp.assignment, relaxed=True)
                if best is not None:
                    # relaxation bound
                    assert lp.objective >= best if model.objective.sense == "max" else lp.objective <= best
            again = ilp_solve(model)
            assert repr(again) == repr(out)


def test_criterion_8_metamorphic(criterion):
    with criterion(8, "utility scaling and zero-item padding preserve verdicts (100 instances)"):
        for seed in range(100):
            inst = random_instance(seed, ["EF", "EF1", "EFX"][seed % 3])
            base = solve_eef(inst).answer
            rng = random.Random(seed)
            util = [list(row) for row in inst.utilities]
            variants = [[[u * f for u in row] for row in util] for f in (2, 7, 10**6)]
            mixed = [rng.choice((2, 7, 10**6)) for _ in range(inst.n)]
            variants.append([[u * f for u in row] for f, row in zip(mixed, util)])
            for variant in variants:
                other = make_instance(variant, list(inst.multiplicities), inst.fairness)
                assert solve_eef(other).answer == base, (seed, variant)
            padded = make_instance([row + [0] for row in util], list(inst.multiplicities) + [2], inst.fairness)
            assert solve_eef(padded).answer == base, seed
