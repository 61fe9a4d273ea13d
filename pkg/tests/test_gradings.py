import random

import pytest

from utgradings.fields import Field
from utgradings.gradings import Grading, GradingError
from utgradings.groups import AbelianGroup
from utgradings.linalg import Subspace
from utgradings import ut

F3 = Field.prime(3)
F5 = Field.prime(5)
Q = Field.rational()
C2 = AbelianGroup((2,))


def canonical_z2_grading(field, n):
    """Even/odd cell degrees: deg e_ij = j - i mod 2. Always a grading."""
    assignment = {}
    for (i, j) in ut.cells(n):
        assignment.setdefault(((j - i) % 2,), []).append(ut.basis_vector(field, n, i, j))
    return Grading.from_vectors(field, C2, n, assignment)


def test_verify_accepts():
    for field in (F3, Q):
        for n in (2, 3, 4):
            assert canonical_z2_grading(field, n).verify().ok


def test_verify_rejects_bracket_violation():
    # move e13 to the odd part: [e12, e23] = e13 now has the wrong degree
    assignment = {
        ((j - i) % 2,): []
        for (i, j) in ut.cells(3)
    }
    for (i, j) in ut.cells(3):
        deg = 1 if (i, j) == (1, 3) else (j - i) % 2
        assignment.setdefault((deg,), []).append(ut.basis_vector(F3, 3, i, j))
    g = Grading.from_vectors(F3, C2, 3, assignment)
    report = g.verify()
    assert not report.ok
    assert any("bracket-violation" in line for line in report.failures)


def test_verify_rejects_non_spanning():
    g = Grading.from_vectors(F3, C2, 2, {(0,): [ut.basis_vector(F3, 2, 1, 2)]})
    report = g.verify()
    assert not report.ok
    assert any("span" in line for line in report.failures)


def test_verify_rejects_overlap():
    e12 = ut.basis_vector(F3, 2, 1, 2)
    full = Subspace.full(F3, 3).rows
    g = Grading.from_vectors(F3, C2, 2, {(0,): list(full), (1,): [e12]})
    assert any("overlap" in line for line in g.verify().failures)


def test_support_and_essential_support():
    g = canonical_z2_grading(F5, 3)
    assert g.support() == {(0,), (1,)}
    assert g.essential_support() == {(0,), (1,)}
    # scalars-only component is not essential
    ident = ut.identity_vector(F5, 2)
    e12 = ut.basis_vector(F5, 2, 1, 2)
    e11 = ut.basis_vector(F5, 2, 1, 1)
    g2 = Grading.from_vectors(F5, C2, 2, {(1,): [ident], (0,): [e12, e11]})
    assert g2.support() == {(0,), (1,)}
    assert g2.essential_support() == {(0,)}


def test_degree_of():
    g = canonical_z2_grading(F5, 3)
    assert g.degree_of(ut.basis_vector(F5, 3, 1, 2)) == (1,)
    assert g.degree_of(ut.identity_vector(F5, 3)) == (0,)
    mixed = tuple(
        F5.add(a, b)
        for a, b in zip(ut.basis_vector(F5, 3, 1, 2), ut.basis_vector(F5, 3, 1, 3))
    )
    assert g.degree_of(mixed) is None
    assert g.degree_of((0,) * 6) is None


def test_is_semihomogeneous():
    g = canonical_z2_grading(F5, 3)
    v = tuple(
        F5.add(a, F5.mul(2, b))
        for a, b in zip(ut.basis_vector(F5, 3, 1, 2), ut.identity_vector(F5, 3))
    )
    flag, parts = g.is_semihomogeneous(v, (1,))
    assert flag
    y, z = parts
    assert g.degree_of(y) == (1,)
    assert ut.center(F5, 3).contains(z)
    flag, _ = g.is_semihomogeneous(ut.basis_vector(F5, 3, 1, 2), (0,))
    assert not flag


def test_transport_preserves_axioms():
    rng = random.Random(11)
    for field in (F3, Q):
        g = canonical_z2_grading(field, 4)
        for _ in range(5):
            a = ut.random_automorphism(field, 4, rng)
            assert g.transport(a).verify().ok


def test_quotient_grading():
    g = canonical_z2_grading(F5, 3)
    center = ut.center(F5, 3)
    q = g.quotient_grading(center)
    assert q.dim == 5
    assert sum(s.dim for s in q.components.values()) == 5
    # quotient bracket agrees with projecting the parent bracket
    u = q.qmap.project(ut.basis_vector(F5, 3, 1, 2))
    v = q.qmap.project(ut.basis_vector(F5, 3, 2, 3))
    w = q.bracket(u, v)
    assert w == q.qmap.project(ut.basis_vector(F5, 3, 1, 3))
    with pytest.raises(GradingError):
        g.quotient_grading(Subspace.span(F5, 6, [ut.basis_vector(F5, 3, 1, 1)]))


def test_json_round_trip():
    for field in (F3, Q):
        g = canonical_z2_grading(field, 3)
        assert Grading.loads(g.dumps()) == g


def test_loads_reports_position():
    with pytest.raises(GradingError) as err:
        Grading.loads('{"field": }')
    assert "line 1" in str(err.value)
