import math

import pytest
from hypothesis import given, strategies as st

from utgradings.groups import AbelianGroup, GroupError, parse_group_flag

C2 = AbelianGroup((2,))
C6 = AbelianGroup((6,))
C2xC4 = AbelianGroup((2, 4))
C2xZ = AbelianGroup((2,), free_rank=1)


def test_invariant_factor_chain():
    AbelianGroup((2, 4, 8))
    with pytest.raises(GroupError):
        AbelianGroup((4, 2))  # 4 does not divide 2
    with pytest.raises(GroupError):
        AbelianGroup((2, 3))
    with pytest.raises(GroupError):
        AbelianGroup((1,))


def test_parse_group_flag():
    assert parse_group_flag("2") == C2
    assert parse_group_flag("2,4") == C2xC4
    assert parse_group_flag("2+1") == C2xZ
    assert parse_group_flag("+2") == AbelianGroup((), free_rank=2)
    with pytest.raises(GroupError):
        parse_group_flag("4,2")
    with pytest.raises(GroupError):
        parse_group_flag("abc")


def test_elements():
    assert sorted(C6.elements()) == [(i,) for i in range(6)]
    assert len(list(C2xC4.elements())) == 8
    with pytest.raises(GroupError):
        list(C2xZ.elements())


def test_compose_coerce():
    g = C2xC4.compose((1, 3), (1, 2))
    assert g == (0, 1)
    assert C2xZ.compose((1, 5), (1, -5)) == (0, 0)
    assert C2xZ.coerce((3, -2)) == (1, -2)


def test_order():
    assert C6.order((0,)) == 1
    assert C6.order((2,)) == 3
    assert C6.order((3,)) == 2
    assert C6.order((1,)) == 6
    assert C2xZ.order((0, 1)) == math.inf
    assert C2xZ.order((1, 0)) == 2


def test_elements_of_order_dividing_2():
    assert set(C6.elements_of_order_dividing_2()) == {(0,), (3,)}
    assert len(list(C2xC4.elements_of_order_dividing_2())) == 4
    assert set(C2xZ.elements_of_order_dividing_2()) == {(0, 0), (1, 0)}


def test_format_parse():
    assert C2xC4.format_element((1, 3)) == "(1,3)"
    assert C2xC4.parse_element("(1,3)") == (1, 3)
    assert C2xZ.parse_element("(1,-2)") == (1, -2)
    with pytest.raises(GroupError):
        C2xC4.parse_element("(1)")


def test_json_round_trip():
    for g in (C2, C6, C2xC4, C2xZ):
        assert AbelianGroup.from_json(g.to_json()) == g


@given(
    st.tuples(st.integers(-10, 10), st.integers(-10, 10)),
    st.tuples(st.integers(-10, 10), st.integers(-10, 10)),
    st.tuples(st.integers(-10, 10), st.integers(-10, 10)),
)
def test_group_axioms(a, b, c):
    G = AbelianGroup((4,), free_rank=1)
    a, b, c = G.coerce(a), G.coerce(b), G.coerce(c)
    assert G.compose(a, b) == G.compose(b, a)
    assert G.compose(G.compose(a, b), c) == G.compose(a, G.compose(b, c))
    assert G.compose(a, G.identity) == a
    assert G.compose(a, G.inverse(a)) == G.identity
    assert G.power(a, 3) == G.compose(a, G.compose(a, a))
