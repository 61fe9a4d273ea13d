"""Finitely generated abelian groups in invariant-factor form.

A group is ``Z_{d1} x ... x Z_{dk} x Z^r`` with ``d1 | d2 | ... | dk``.
Elements are plain int tuples of length ``k + r``: torsion coordinates
reduced mod their factor, then free coordinates (arbitrary ints).
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterator, Sequence, Tuple

GroupElement = Tuple[int, ...]


class GroupError(ValueError):
    """Invalid group parameter or element."""


class AbelianGroup:
    """Written additively internally, but exposed multiplicatively (compose/inverse/power)."""

    __slots__ = ("invariant_factors", "free_rank")

    def __init__(self, invariant_factors: Sequence[int] = (), free_rank: int = 0):
        factors = tuple(int(d) for d in invariant_factors)
        for d in factors:
            if d < 2:
                raise GroupError(f"invariant factors must be >= 2, got {d}")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise GroupError(f"invariant factors must form a divisibility chain: {factors}")
        if free_rank < 0:
            raise GroupError(f"free rank must be >= 0, got {free_rank}")
        self.invariant_factors = factors
        self.free_rank = int(free_rank)

    # -- basic structure -----------------------------------------------------------

    @property
    def ncoords(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.ncoords

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def size(self) -> int | float:
        if not self.is_finite():
            return math.inf
        return math.prod(self.invariant_factors) if self.invariant_factors else 1

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == self.ncoords
            and all(isinstance(c, int) for c in g)
            and all(0 <= c < d for c, d in zip(g, self.invariant_factors))
        )

    def coerce(self, g: Sequence[int]) -> GroupElement:
        g = tuple(int(c) for c in g)
        if len(g) != self.ncoords:
            raise GroupError(f"element length {len(g)} != {self.ncoords} coordinates")
        tor = tuple(c % d for c, d in zip(g, self.invariant_factors))
        return tor + g[len(tor):]

    # -- operations ----------------------------------------------------------------

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.coerce(tuple(a + b for a, b in zip(g, h)))

    def inverse(self, g: GroupElement) -> GroupElement:
        return self.coerce(tuple(-a for a in g))

    def power(self, g: GroupElement, k: int) -> GroupElement:
        return self.coerce(tuple(a * k for a in g))

    def order(self, g: GroupElement) -> int | float:
        g = self.coerce(g)
        if any(g[len(self.invariant_factors):]):
            return math.inf
        o = 1
        for c, d in zip(g, self.invariant_factors):
            if c:
                o = math.lcm(o, d // math.gcd(c, d))
        return o

    # -- enumeration ---------------------------------------------------------------

    def elements(self) -> Iterator[GroupElement]:
        if not self.is_finite():
            raise GroupError("cannot enumerate an infinite group")
        return product(*(range(d) for d in self.invariant_factors))

    def elements_of_order_dividing_2(self) -> Iterator[GroupElement]:
        """All g with g^2 = identity, including identity (works for infinite groups)."""
        halves = [(0, d // 2) if d % 2 == 0 else (0,) for d in self.invariant_factors]
        for tor in product(*halves):
            yield tor + (0,) * self.free_rank

    # -- text form -----------------------------------------------------------------

    def format_element(self, g: GroupElement) -> str:
        return "(" + ",".join(str(c) for c in self.coerce(g)) + ")"

    def parse_element(self, s: str) -> GroupElement:
        parts = s.strip().strip("()").split(",") if s.strip().strip("()") else []
        return self.coerce([int(c) for c in parts])

    # -- structural ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AbelianGroup)
            and self.invariant_factors == other.invariant_factors
            and self.free_rank == other.free_rank
        )

    def __hash__(self) -> int:
        return hash((self.invariant_factors, self.free_rank))

    def __repr__(self) -> str:
        parts = [f"Z{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank}

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls(tuple(data.get("invariant_factors", ())), data.get("free_rank", 0))


def parse_group_flag(text: str) -> AbelianGroup:
    """CLI group syntax: ``"2,2"`` = Z2 x Z2, ``"2+1"`` = Z2 x Z, ``"+2"`` = Z^2, ``""`` = trivial."""
    text = text.strip()
    free_rank = 0
    try:
        if "+" in text:
            text, rank_part = text.split("+", 1)
            free_rank = int(rank_part)
        factors = [int(t) for t in text.split(",") if t.strip()] if text.strip() else []
    except ValueError as exc:
        raise GroupError(f"bad group flag {text!r}: {exc}") from exc
    return AbelianGroup(factors, free_rank)
