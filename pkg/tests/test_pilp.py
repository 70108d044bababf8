import pytest
from helpers import random_instance

from eefalloc.core import Allocation, InstanceError, make_instance
from eefalloc.dominance import is_pareto_efficient
from eefalloc.fairness import is_envy_free
from eefalloc.oracle import count_allocations, enumerate_allocations, pilp_counterexample
from eefalloc.pilp import (
    CertificateError,
    build_system,
    column_encoding_lengths,
    compute_phi,
    export_model,
    export_system,
    induced_b,
    q_member,
    verify_certificate,
)
from eefalloc.solver import IlpModel, read_model, write_model

A = Allocation.of
UNIT = make_instance([[1], [1]], [1])
UNIT2 = make_instance([[1, 1], [1, 1]], [1, 1])


def test_dimensions_unit():
    s = build_system(UNIT)
    assert (s.rows, s.columns, s.q_dimension) == (6, 2, 8)
    assert [row[0] for row in s.A] == [1, -1, 0, -1, 0, -1]


def test_membership_examples():
    s = build_system(UNIT)
    z = A([[0], [0]])
    b = induced_b(UNIT, z)
    assert b == (1, 0, 0, 0, 0, -1)
    assert q_member(s, b, z)
    bad = A([[1], [0]])
    assert not q_member(s, induced_b(UNIT, bad), bad)
    assert not q_member(s, (2, 0, 0, 0, 0, -1), z)
    assert not q_member(s, (1, 0, 0, 0, 0, -2), z)


def test_non_ef_rejected():
    with pytest.raises(InstanceError) as info:
        build_system(UNIT.with_fairness("EF1"))
    assert info.value.code == "unsupported_combination"


def test_certificate_examples():
    s2 = build_system(UNIT2)
    diag = A([[1, 0], [0, 1]])
    assert verify_certificate(s2, induced_b(UNIT2, diag), diag)
    assert verify_certificate(s2, induced_b(UNIT2, diag))
    s = build_system(UNIT)
    assert not verify_certificate(s, induced_b(UNIT, A([[0], [0]])))
    one = make_instance([[1]], [1])
    assert verify_certificate(build_system(one), induced_b(one, A([[1]])))


def test_certificate_outside_projection():
    s = build_system(UNIT)
    with pytest.raises(CertificateError):
        verify_certificate(s, induced_b(UNIT, A([[1], [0]])))
    with pytest.raises(CertificateError):
        verify_certificate(s, (1, 0, 0, 0, 0, -1), A([[1], [0]]))


def test_phi_values():
    assert compute_phi(UNIT) == 16
    zero = make_instance([[0, 0], [0, 0]], [1, 1])
    s = build_system(zero)
    for j in range(s.columns):
        assert sum(1 for row in s.A if row[j]) == 2
    base = column_encoding_lengths(make_instance([[3, 1], [1, 1]], [1, 1]))
    doubled = column_encoding_lengths(make_instance([[6, 1], [1, 1]], [1, 1]))
    assert doubled[0] - base[0] == 2
    assert doubled[1:] == base[1:]


def test_certificate_equivalence_by_enumeration():
    for seed in range(60):
        inst = random_instance(seed, "EF", -2, 3)
        if count_allocations(inst) > 150:
            continue
        s = build_system(inst)
        for z in enumerate_allocations(inst):
            if is_envy_free(inst, z).envy_free:
                assert verify_certificate(s, induced_b(inst, z), z) == is_pareto_efficient(inst, z)


def test_counterexample_is_certificate():
    b = pilp_counterexample(UNIT2)
    assert b is not None
    assert verify_certificate(build_system(UNIT2), b)
    assert pilp_counterexample(UNIT) is None


def test_model_text_examples():
    assert write_model(IlpModel()) == "FEASIBILITY\nEND\n"
    m = IlpModel()
    m.add_variable("x0", 0, None)
    m.add_variable("x1", 0, None)
    m.add_constraint([1, 1], "<=", 5, "c0")
    text = write_model(m)
    lines = text.splitlines()
    body = lines[lines.index("SUBJECT TO") + 1 : lines.index("BOUNDS")]
    assert body == ["c0: 1 x0 + 1 x1 <= 5"]
    assert write_model(read_model(text)) == text


def test_export_files_stable():
    files = export_system(build_system(UNIT))
    assert set(files) == {"A.model", "Q.model", "manifest.json"}
    a_rows = [l for l in files["A.model"].splitlines() if l.startswith("r")]
    assert len(a_rows) == 6
    for text in files.values():
        if text.endswith("END\n"):
            assert write_model(read_model(text)) == text
    assert export_system(build_system(UNIT)) == files
    assert export_model(build_system(UNIT)) == files["A.model"]
