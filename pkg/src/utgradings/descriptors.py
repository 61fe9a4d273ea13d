"""Symbolic grading descriptors, their construction, and class arithmetic.

Two kinds of descriptor cover every graded-isomorphism class:

* elementary: every matrix unit is homogeneous; determined by the degrees
  eta = (deg of each superdiagonal cell) plus the degree t of the identity
  matrix.
* type2 (characteristic != 2, n >= 3): built from the frame of symmetric and
  skew combinations across the antidiagonal, determined by an order-2 degree
  g, a symmetric eta, and t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import reduce
from itertools import product
from typing import Dict, Optional, Sequence, Tuple

from .fields import Field, Scalar
from .groups import AbelianGroup, GroupElement
from .gradings import Grading, GradingError
from . import ut

Eta = Tuple[GroupElement, ...]


class DescriptorError(ValueError):
    """Invalid descriptor parameters."""


def coerce_eta(group: AbelianGroup, eta: Sequence[Sequence[int]], n: int) -> Eta:
    eta = tuple(group.coerce(e) for e in eta)
    if len(eta) != n - 1:
        raise DescriptorError(f"eta has length {len(eta)}, expected {n - 1}")
    return eta


def eta_is_symmetric(eta: Eta) -> bool:
    return eta == tuple(reversed(eta))


def pi_degree(group: AbelianGroup, eta: Eta, i: int, j: int) -> GroupElement:
    """Degree of the cell (i, j): product of the superdiagonal degrees i..j-1."""
    return reduce(group.compose, eta[i - 1 : j - 1], group.identity)


@dataclass(frozen=True)
class GradingDescriptor:
    kind: str  # "elementary" | "type2"
    n: int
    group: AbelianGroup
    t: GroupElement
    eta: Eta
    g: Optional[GroupElement] = None

    def __post_init__(self):
        if self.kind not in ("elementary", "type2"):
            raise DescriptorError(f"unknown descriptor kind {self.kind!r}")
        if self.n < 2:
            raise DescriptorError("n must be at least 2")
        object.__setattr__(self, "t", self.group.coerce(self.t))
        object.__setattr__(self, "eta", coerce_eta(self.group, self.eta, self.n))
        if self.kind == "elementary":
            if self.g is not None:
                raise DescriptorError("elementary descriptors take no g")
        else:
            if self.n < 3:
                raise DescriptorError("type2 descriptors require n >= 3")
            if self.g is None:
                raise DescriptorError("type2 descriptors require g")
            g = self.group.coerce(self.g)
            object.__setattr__(self, "g", g)
            if g == self.group.identity or self.group.order(g) != 2:
                raise DescriptorError("type2 g must have order exactly 2")
            if not eta_is_symmetric(self.eta):
                raise DescriptorError("type2 eta must be symmetric")

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "n": self.n,
            "group": self.group.to_json(),
            "t": list(self.t),
            "eta": [list(e) for e in self.eta],
        }
        if self.g is not None:
            data["g"] = list(self.g)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "GradingDescriptor":
        try:
            group = AbelianGroup.from_json(data["group"])
            return cls(
                kind=data["kind"],
                n=int(data["n"]),
                group=group,
                t=group.coerce(data["t"]),
                eta=tuple(group.coerce(e) for e in data["eta"]),
                g=group.coerce(data["g"]) if "g" in data else None,
            )
        except (KeyError, TypeError) as exc:
            raise DescriptorError(f"malformed descriptor data: {exc!r}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "GradingDescriptor":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            )
        return cls.from_json(data)

    def describe(self) -> str:
        grp = self.group
        parts = [f"kind={self.kind}", f"n={self.n}", f"t={grp.format_element(self.t)}"]
        if self.g is not None:
            parts.append(f"g={grp.format_element(self.g)}")
        parts.append("eta=(" + ", ".join(grp.format_element(e) for e in self.eta) + ")")
        return " ".join(parts)


# -- construction -----------------------------------------------------------------


def build(d: GradingDescriptor, field: Field) -> Grading:
    if d.kind == "type2" and field.characteristic() == 2:
        raise DescriptorError("type2 gradings do not exist in characteristic 2")
    n, grp = d.n, d.group
    assignment: Dict[GroupElement, list] = {}

    def put(deg: GroupElement, vec) -> None:
        assignment.setdefault(grp.coerce(deg), []).append(vec)

    ident = ut.identity_vector(field, n)
    if d.kind == "elementary":
        for (i, j) in ut.cells(n):
            if i == j:
                continue
            put(pi_degree(grp, d.eta, i, j), ut.basis_vector(field, n, i, j))
        # diagonal: a complement of the scalar line sits in degree 1, I moves to t
        for i in range(1, n):
            put(grp.identity, ut.basis_vector(field, n, i, i))
        put(d.t, ident)
    else:
        g = d.g
        sym_diag = []
        for (i, j) in ut.cells(n):
            mi, mj = n + 1 - j, n + 1 - i
            if (i, j) < (mi, mj):
                e_ij = ut.basis_vector(field, n, i, j)
                e_mir = ut.basis_vector(field, n, mi, mj)
                pij = pi_degree(grp, d.eta, i, j)
                minus = tuple(field.sub(a, b) for a, b in zip(e_ij, e_mir))
                plus = tuple(field.add(a, b) for a, b in zip(e_ij, e_mir))
                if i == j:
                    put(grp.identity, minus)
                    sym_diag.append(plus)
                else:
                    put(pij, minus)
                    put(grp.compose(g, pij), plus)
            elif (i, j) == (mi, mj):
                deg = grp.compose(g, pi_degree(grp, d.eta, i, j))
                if i == j:
                    sym_diag.append(ut.basis_vector(field, n, i, j))
                else:
                    put(deg, ut.basis_vector(field, n, i, j))
        # the symmetric diagonal part contains I; keep a complement at degree g
        for vec in sym_diag[:-1]:
            put(g, vec)
        put(d.t, ident)
    return Grading.from_vectors(field, grp, n, assignment)


# -- equivalence relations --------------------------------------------------------


def eta_equiv(eta: Eta, eta2: Eta) -> bool:
    """Equal or reversed."""
    return eta == eta2 or eta == tuple(reversed(eta2))


def eta_equiv_g(group: AbelianGroup, g: GroupElement, eta: Eta, eta2: Eta) -> bool:
    """Entrywise twist by g on the lower half, middle entry pinned (both symmetric)."""
    if group.order(g) != 2:
        raise DescriptorError("twist degree must have order exactly 2")
    if not (eta_is_symmetric(eta) and eta_is_symmetric(eta2)):
        raise DescriptorError("twist equivalence needs symmetric sequences")
    if len(eta) != len(eta2):
        return False
    m = len(eta)
    if m % 2 == 1 and eta[m // 2] != eta2[m // 2]:
        return False
    return all(
        eta2[i] == eta[i] or eta2[i] == group.compose(g, eta[i]) for i in range(m // 2)
    )


def _check_comparable(d: GradingDescriptor, d2: GradingDescriptor) -> None:
    if d.n != d2.n or d.group != d2.group:
        raise DescriptorError("descriptors have different n or group")


def graded_isomorphic(d: GradingDescriptor, d2: GradingDescriptor) -> bool:
    _check_comparable(d, d2)
    if d.kind != d2.kind:
        return False
    if d.kind == "elementary":
        return d.t == d2.t and eta_equiv(d.eta, d2.eta)
    return d.g == d2.g and d.t == d2.t and eta_equiv_g(d.group, d.g, d.eta, d2.eta)


def practically_isomorphic(d: GradingDescriptor, d2: GradingDescriptor) -> bool:
    _check_comparable(d, d2)
    if d.kind != d2.kind:
        return False
    if d.kind == "elementary":
        return eta_equiv(d.eta, d2.eta)
    return d.g == d2.g and eta_equiv_g(d.group, d.g, d.eta, d2.eta)


# -- canonical forms --------------------------------------------------------------


def canonical(d: GradingDescriptor) -> GradingDescriptor:
    """Order-minimal representative of the graded-isomorphism class."""
    if d.kind == "elementary":
        eta = min(d.eta, tuple(reversed(d.eta)))
        return GradingDescriptor("elementary", d.n, d.group, d.t, eta)
    m = len(d.eta)
    half = [min(e, d.group.compose(d.g, e)) for e in d.eta[: m // 2]]
    middle = [d.eta[m // 2]] if m % 2 == 1 else []
    eta = tuple(half + middle + list(reversed(half)))
    return GradingDescriptor("type2", d.n, d.group, d.t, eta, d.g)


def canonical_practical(d: GradingDescriptor) -> GradingDescriptor:
    """Canonical form with t normalized away (practical classes ignore t)."""
    c = canonical(d)
    t = c.group.identity if c.kind == "elementary" else c.g
    return GradingDescriptor(c.kind, c.n, c.group, t, c.eta, c.g)


# -- counting ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClassCount:
    graded_classes: int
    practical_classes: int
    breakdown: Tuple[Tuple[str, int, int], ...] = dc_field(default=())


def all_descriptors(n: int, group: AbelianGroup, char2: bool) -> list:
    """Every valid descriptor over a finite group (all t, all eta, all g)."""
    if not group.is_finite():
        raise DescriptorError("descriptor enumeration requires a finite group")
    elems = list(group.elements())
    out = []
    for t in elems:
        for eta in product(elems, repeat=n - 1):
            out.append(GradingDescriptor("elementary", n, group, t, eta))
    if not char2 and n >= 3:
        twists = [g for g in group.elements_of_order_dividing_2() if g != group.identity]
        m = n - 1
        for g in twists:
            for half in product(elems, repeat=(m + 1) // 2):
                eta = tuple(half) + tuple(reversed(half[: m // 2]))
                for t in elems:
                    out.append(GradingDescriptor("type2", n, group, t, eta, g))
    return out


def count_classes(n: int, group: AbelianGroup, char2: bool) -> ClassCount:
    graded: Dict[str, set] = {"elementary": set(), "type2": set()}
    practical: Dict[str, set] = {"elementary": set(), "type2": set()}
    for d in all_descriptors(n, group, char2):
        graded[d.kind].add(canonical(d))
        practical[d.kind].add(canonical_practical(d))
    breakdown = tuple(
        (kind, len(graded[kind]), len(practical[kind])) for kind in ("elementary", "type2")
    )
    return ClassCount(
        graded_classes=sum(len(s) for s in graded.values()),
        practical_classes=sum(len(s) for s in practical.values()),
        breakdown=breakdown,
    )
