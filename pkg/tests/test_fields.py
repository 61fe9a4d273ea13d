import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from utgradings.fields import Field, FieldError, is_prime, parse_field_flag

F2 = Field.prime(2)
F5 = Field.prime(5)
Q = Field.rational()


def test_prime_validation():
    with pytest.raises(FieldError):
        Field.prime(4)
    with pytest.raises(FieldError):
        Field.prime(1)
    Field.prime(2147483629)  # largest prime below 2^31
    with pytest.raises(FieldError):
        Field.prime(2**31 + 1)


def test_is_prime_small():
    assert [m for m in range(2, 30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_parse_field_flag():
    assert parse_field_flag("5") == F5
    assert parse_field_flag("Q") == Q
    assert parse_field_flag("q") == Q
    with pytest.raises(FieldError):
        parse_field_flag("6")
    with pytest.raises(FieldError):
        parse_field_flag("R")


def test_elements():
    assert list(F5.elements()) == [0, 1, 2, 3, 4]
    with pytest.raises(FieldError):
        Q.elements()


def test_coerce():
    assert F5.coerce(-3) == 2
    assert F5.coerce(Fraction(1, 2)) == 3  # 2 * 3 = 1 mod 5
    assert Q.coerce(7) == Fraction(7)
    assert Q.coerce("2/3") == Fraction(2, 3)


def test_format_parse_round_trip():
    for f in (F5, Q):
        for x in (f.zero, f.one, f.coerce(3), f.coerce("-1/2") if f is Q else f.coerce(4)):
            assert f.parse(f.format(x)) == x


def test_json_round_trip():
    for f in (F2, F5, Q):
        assert Field.from_json(f.to_json()) == f


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_field_axioms_f5(a, b, c):
    a, b, c = F5.coerce(a), F5.coerce(b), F5.coerce(c)
    assert F5.add(a, b) == F5.add(b, a)
    assert F5.mul(a, b) == F5.mul(b, a)
    assert F5.add(F5.add(a, b), c) == F5.add(a, F5.add(b, c))
    assert F5.mul(F5.mul(a, b), c) == F5.mul(a, F5.mul(b, c))
    assert F5.mul(a, F5.add(b, c)) == F5.add(F5.mul(a, b), F5.mul(a, c))
    assert F5.add(a, F5.neg(a)) == F5.zero
    if a != F5.zero:
        assert F5.mul(a, F5.inv(a)) == F5.one


@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_field_axioms_q(a, b):
    a, b = Q.coerce(a), Q.coerce(b)
    assert Q.sub(Q.add(a, b), b) == a
    if b != Q.zero:
        assert Q.mul(Q.div(a, b), b) == a


def test_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)
    with pytest.raises(ZeroDivisionError):
        Q.div(Q.one, Q.zero)
