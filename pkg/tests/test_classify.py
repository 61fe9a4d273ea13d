import random

import pytest

from utgradings.classify import ClassificationError, classify, main_division_degree
from utgradings.descriptors import GradingDescriptor, all_descriptors, build, canonical
from utgradings.fields import Field
from utgradings.groups import AbelianGroup
from utgradings import ut

F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)
Q = Field.rational()
C2 = AbelianGroup((2,))
C3 = AbelianGroup((3,))


def round_trip(d, field):
    got, trace = classify(build(d, field))
    assert got == canonical(d), f"{d.describe()} -> {got.describe()}"
    return trace


def test_round_trip_n2():
    for field in (F2, F3, Q):
        for d in all_descriptors(2, C2, char2=field.characteristic() == 2):
            round_trip(d, field)


def test_round_trip_n3():
    for field in (F3, Q):
        for d in all_descriptors(3, C2, char2=False):
            round_trip(d, field)
    for d in all_descriptors(3, C2, char2=True):
        round_trip(d, F2)


def test_round_trip_n3_c3():
    for d in all_descriptors(3, C3, char2=False):
        round_trip(d, Q)


def test_round_trip_n4_spot():
    rng = random.Random(13)
    ds = all_descriptors(4, C2, char2=False)
    for d in rng.sample(ds, 12):
        round_trip(d, F3)


def test_round_trip_survives_twists():
    rng = random.Random(14)
    for d in (
        GradingDescriptor("elementary", 3, C2, (1,), ((0,), (1,))),
        GradingDescriptor("type2", 3, C2, (0,), ((1,), (1,)), (1,)),
        GradingDescriptor("type2", 4, C2, (1,), ((1,), (0,), (1,)), (1,)),
    ):
        g = build(d, F5)
        for _ in range(10):
            a = ut.random_automorphism(F5, 4 if d.n == 4 else 3, rng)
            got, _ = classify(g.transport(a))
            assert got == canonical(d)


def test_main_division_degree():
    # elementary gradings have trivial main-division degree
    d = GradingDescriptor("elementary", 3, C2, (1,), ((1,), (1,)))
    assert main_division_degree(build(d, F3)) == C2.identity
    # type2 gradings carry their g
    d = GradingDescriptor("type2", 3, C2, (0,), ((1,), (1,)), (1,))
    assert main_division_degree(build(d, F3)) == (1,)


def test_trace_records_branch():
    d = GradingDescriptor("type2", 3, C2, (1,), ((1,), (1,)), (1,))
    _, trace = classify(build(d, Q))
    assert trace.branch == "type2"
    assert trace.g_main == (1,)
    d = GradingDescriptor("elementary", 3, C2, (1,), ((0,), (1,)))
    _, trace = classify(build(d, Q))
    assert trace.branch == "elementary"


def test_rejects_non_grading():
    from utgradings.gradings import Grading

    bad = Grading.from_vectors(
        F3, C2, 2, {(0,): [ut.basis_vector(F3, 2, 1, 2)]}
    )
    with pytest.raises(ClassificationError):
        classify(bad)
