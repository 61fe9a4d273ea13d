"""Exact scalar arithmetic: prime fields F_p and the rational numbers.

Prime-field scalars are plain ints in ``[0, p)``; rational scalars are
exact reduced fractions (``gmpy2.mpq`` when available, ``fractions.Fraction``
otherwise; the two interoperate and compare equal). No floating point
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

try:
    from gmpy2 import mpq as Rational
except ImportError:
    Rational = Fraction

Scalar = Union[int, Fraction]

_MAX_PRIME = 2**31


class FieldError(ValueError):
    """Invalid field parameter or mixed-field operation."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """A prime field F_p (``kind='prime'``) or the rationals (``kind='rational'``)."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "prime":
            if p is None or not (2 <= p < _MAX_PRIME) or not is_prime(p):
                raise FieldError(f"modulus must be a prime in [2, 2^31), got {p!r}")
            self.kind = "prime"
            self.p = int(p)
        elif kind == "rational":
            if p is not None:
                raise FieldError("rational field takes no modulus")
            self.kind = "rational"
            self.p = None
        else:
            raise FieldError(f"unknown field kind {kind!r}")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("prime", p)

    @classmethod
    def rational(cls) -> "Field":
        return cls("rational")

    # -- identities and predicates -------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return 0 if self.kind == "prime" else Rational(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.kind == "prime" else Rational(1)

    def characteristic(self) -> int:
        return self.p if self.kind == "prime" else 0

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    # -- arithmetic ----------------------------------------------------------------

    def coerce(self, x) -> Scalar:
        """Bring an int/Fraction/scalar-string into canonical form."""
        if self.kind == "prime":
            if type(x) is int:
                return x % self.p
            if isinstance(x, str):
                return self.parse(x)
            den = getattr(x, "denominator", 1)
            if den != 1:
                return self.div(int(x.numerator) % self.p, int(den) % self.p)
            return int(x) % self.p
        if type(x) is Rational:
            return x
        if isinstance(x, str):
            return self.parse(x)
        return Rational(x)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.kind == "prime" else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.kind == "prime" else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.kind == "prime" else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.kind == "prime" else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.kind == "prime":
            return pow(a, -1, self.p)
        return Rational(1) / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    # -- iteration (finite fields only) --------------------------------------------

    def elements(self) -> Iterator[Scalar]:
        if self.kind != "prime":
            raise FieldError("cannot enumerate an infinite field")
        return iter(range(self.p))

    # -- text form -----------------------------------------------------------------

    def parse(self, s: str) -> Scalar:
        s = s.strip()
        if self.kind == "prime":
            if "/" in s:
                num, den = s.split("/", 1)
                return self.div(int(num) % self.p, int(den) % self.p)
            return int(s) % self.p
        return Rational(s)

    def format(self, a: Scalar) -> str:
        if self.kind == "prime":
            return str(a % self.p)
        a = Rational(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    # -- structural ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __repr__(self) -> str:
        return f"F{self.p}" if self.kind == "prime" else "Q"

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "rational"}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        if not isinstance(data, dict) or "kind" not in data:
            raise FieldError(f"malformed field spec: {data!r}")
        if data["kind"] == "prime":
            return cls.prime(data.get("p"))
        if data["kind"] == "rational":
            return cls.rational()
        raise FieldError(f"unknown field kind {data['kind']!r}")


def parse_field_flag(text: str) -> Field:
    """CLI field syntax: a prime like ``5``, or ``Q`` for the rationals."""
    text = text.strip()
    if text.upper() == "Q":
        return Field.rational()
    try:
        return Field.prime(int(text))
    except ValueError as exc:
        raise FieldError(f"bad field flag {text!r}: {exc}") from None
