import pytest

from utgradings.descriptors import GradingDescriptor, build
from utgradings.fields import Field
from utgradings.groups import AbelianGroup
from utgradings.oracle import (
    BudgetExceeded,
    CensusConfig,
    OracleError,
    all_subspaces,
    census,
    enumerate_gradings,
    graded_isomorphic_search,
    labeled_decompositions,
    practical_isomorphic_search,
)

F2 = Field.prime(2)
F3 = Field.prime(3)
C2 = AbelianGroup((2,))


def test_all_subspaces_counts():
    # Gaussian binomials: F2^3 has 1+7+7+1 subspaces, F3^2 has 1+4+1
    assert sum(1 for _ in all_subspaces(F2, 3)) == 16
    assert sum(1 for _ in all_subspaces(F3, 2)) == 6


def test_labeled_decompositions_count():
    # ordered splittings of F2^2 into two labeled parts:
    # (2,0), (0,2), and 3*2 line pairs
    labels = list(C2.elements())
    assert sum(1 for _ in labeled_decompositions(F2, 2, labels)) == 8


def test_full_mode_n2():
    cfg = CensusConfig(2, F2, C2, mode="full")
    gradings = list(enumerate_gradings(cfg))
    assert len(gradings) == 9
    assert all(g.verify().ok for g in gradings)


def test_pruned_matches_full_at_n2():
    for field in (F2, F3):
        full = list(enumerate_gradings(CensusConfig(2, field, C2, mode="full")))
        pruned = list(enumerate_gradings(CensusConfig(2, field, C2, mode="pruned")))
        assert len(full) == len(pruned)
        assert {g.dumps() for g in full} == {g.dumps() for g in pruned}


def test_pruned_streams_each_grading_once():
    seen = set()
    for g in enumerate_gradings(CensusConfig(3, F2, C2, mode="pruned")):
        key = g.dumps()
        assert key not in seen
        seen.add(key)
    assert len(seen) == 65


def test_budget_enforced():
    cfg = CensusConfig(3, F2, C2, mode="pruned", budget=10)
    with pytest.raises(BudgetExceeded):
        list(enumerate_gradings(cfg))


def test_rational_field_rejected():
    with pytest.raises(OracleError):
        list(enumerate_gradings(CensusConfig(2, Field.rational(), C2, mode="full")))


def test_isomorphism_searches():
    d1 = GradingDescriptor("elementary", 3, C2, (0,), ((0,), (1,)))
    d2 = GradingDescriptor("elementary", 3, C2, (0,), ((1,), (0,)))
    d3 = GradingDescriptor("elementary", 3, C2, (1,), ((0,), (1,)))
    d4 = GradingDescriptor("elementary", 3, C2, (0,), ((1,), (1,)))
    g1, g2, g3, g4 = (build(d, F3) for d in (d1, d2, d3, d4))
    w = graded_isomorphic_search(g1, g2)
    assert w is not None
    assert g1.transport(w).components == g2.components
    assert graded_isomorphic_search(g1, g3) is None  # t differs
    assert practical_isomorphic_search(g1, g3) is not None
    assert practical_isomorphic_search(g1, g4) is None


def test_census_full_n2():
    r = census(CensusConfig(2, F2, C2, mode="full"))
    assert r.total_gradings == 9
    assert len(r.classes) == 4 and r.practical_classes == 2
    assert r.mismatches == []
    assert sorted(size for _, size in r.classes) == [1, 2, 2, 4]


def test_census_jobs_agree():
    seq = census(CensusConfig(2, F3, C2, mode="full", jobs=1))
    par = census(CensusConfig(2, F3, C2, mode="full", jobs=2))
    assert seq.total_gradings == par.total_gradings
    assert [(d.dumps(), s) for d, s in seq.classes] == [
        (d.dumps(), s) for d, s in par.classes
    ]


def test_census_table_format():
    r = census(CensusConfig(2, F2, C2, mode="full"))
    text = r.table()
    assert "total gradings: 9" in text
    assert "graded classes: 4" in text
