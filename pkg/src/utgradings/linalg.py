"""Exact linear algebra over a prime field or the rationals.

Vectors are tuples of scalars; subspaces are stored by their reduced row
echelon basis, so equal subspaces compare equal structurally. Mod-p work is
routed through the kernel backend; rational work stays in exact fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .fields import Field, Rational, Scalar
from .kernel import reduce_mod, rref_mod

Vector = Tuple[Scalar, ...]


# -- free functions on vectors ----------------------------------------------------


def zero_vector(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def vec_add(field: Field, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c: Scalar, v: Sequence[Scalar]) -> Vector:
    return tuple(field.mul(c, a) for a in v)


def vec_neg(field: Field, v: Sequence[Scalar]) -> Vector:
    return tuple(field.neg(a) for a in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(a == 0 for a in v)


def _rref_frac(rows: Sequence[Sequence[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), -1)
        if piv < 0:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        row = mat[r]
        inv = Rational(1) / row[c]
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] *= inv
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                other = mat[i]
                for j in range(c, ncols):
                    rj = row[j]
                    if rj:
                        other[j] -= f * rj
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rref(field: Field, rows: Sequence[Sequence[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if field.kind == "prime":
        return rref_mod([list(r) for r in rows], field.p)
    return _rref_frac([[x if type(x) is Rational else Rational(x) for x in r] for r in rows])


class Subspace:
    """A linear subspace of F^ambient, stored by its RREF basis."""

    __slots__ = ("field", "ambient", "rows", "pivots")

    def __init__(self, field: Field, ambient: int, rows: Sequence[Vector], pivots: Sequence[int]):
        self.field = field
        self.ambient = ambient
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        vecs = [[field.coerce(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError(f"vector length {len(v)} != ambient {ambient}")
        rows, pivots = rref(field, vecs)
        return cls(field, ambient, [tuple(r) for r in rows], pivots)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, [], [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        one, zero = field.one, field.zero
        rows = [tuple(one if j == i else zero for j in range(ambient)) for i in range(ambient)]
        return cls(field, ambient, rows, list(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[Scalar]) -> Vector:
        """Residue of ``vec`` modulo this subspace (zero iff contained)."""
        coerce = self.field.coerce
        v = [coerce(x) for x in vec]
        if self.field.kind == "prime":
            return tuple(reduce_mod(v, [list(r) for r in self.rows], list(self.pivots), self.field.p))
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                for j in range(c, len(v)):
                    rj = row[j]
                    if rj:
                        v[j] -= f * rj
        return tuple(v)

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return is_zero_vector(self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def coords(self, vec: Sequence[Scalar]) -> Vector:
        """Coefficients of ``vec`` in the RREF basis; raises if not contained."""
        v = tuple(self.field.coerce(x) for x in vec)
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        # RREF basis: the coordinate on row i is the entry at its pivot column
        return tuple(v[c] for c in self.pivots)

    def add(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.span(self.field, self.ambient, self.rows + other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref of [(u|u); (w|0)], rows with zero left half carry the intersection."""
        self._check_compatible(other)
        n = self.ambient
        zero = self.field.zero
        block = [list(r) + list(r) for r in self.rows]
        block += [list(r) + [zero] * n for r in other.rows]
        rows, _ = rref(self.field, block)
        inter = [tuple(r[n:]) for r in rows if is_zero_vector(r[:n])]
        return Subspace.span(self.field, n, inter)

    def complement_within(self, larger: "Subspace") -> "Subspace":
        """A complement of self inside ``larger`` (self must be contained in it)."""
        self._check_compatible(larger)
        cur = self
        picked: List[Vector] = []
        for v in larger.rows:
            if not cur.contains(v):
                picked.append(v)
                cur = cur.add(Subspace.span(self.field, self.ambient, [v]))
        if cur.dim != larger.dim or not larger.contains_subspace(self):
            raise ValueError("first subspace is not contained in the second")
        return Subspace.span(self.field, self.ambient, picked)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.field != other.field or self.ambient != other.ambient:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field!r})"


# -- solving ----------------------------------------------------------------------


def solve_combination(
    field: Field, vectors: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> Optional[Vector]:
    """Coefficients c with sum c_i vectors_i = target, or None if unsolvable."""
    k = len(vectors)
    n = len(target)
    target = [field.coerce(x) for x in target]
    # augmented system: columns are the vectors, last column the target
    aug = [[field.coerce(vectors[i][r]) for i in range(k)] + [target[r]] for r in range(n)]
    rows, pivots = rref(field, aug)
    if k in pivots:
        return None
    c = [field.zero] * k
    for row, p in zip(rows, pivots):
        c[p] = row[k]
    return tuple(c)


def nullspace(field: Field, matrix: Sequence[Sequence[Scalar]], ncols: int) -> List[Vector]:
    """Basis of {x in F^ncols : M x = 0} for M given as a list of rows."""
    rows, pivots = rref(field, [[field.coerce(x) for x in r] for r in matrix])
    pivot_set = set(pivots)
    basis = []
    one, zero = field.one, field.zero
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(rows, pivots):
            v[p] = field.neg(row[free])
        basis.append(tuple(v))
    return basis


def affine_solve(
    field: Field,
    offset: Sequence[Scalar],
    generators: Sequence[Sequence[Scalar]],
    target: Subspace,
) -> Optional[Vector]:
    """A vector offset + sum c_i gen_i lying in ``target``, or None.

    Reduction modulo the target is linear, so this is the linear system
    sum c_i reduce(gen_i) = -reduce(offset).
    """
    red_gens = [target.reduce(g) for g in generators]
    rhs = vec_neg(field, target.reduce(offset))
    c = solve_combination(field, red_gens, rhs)
    if c is None:
        return None
    result = tuple(field.coerce(x) for x in offset)
    for ci, g in zip(c, generators):
        if ci != 0:
            result = vec_add(field, result, vec_scale(field, ci, g))
    return result


class QuotientMap:
    """Coordinates on F^ambient / U, built from the RREF of U.

    Non-pivot coordinates of the reduced vector give a section of the
    quotient; ``lift`` places quotient coordinates back at those positions.
    """

    __slots__ = ("sub", "free_cols")

    def __init__(self, sub: Subspace):
        self.sub = sub
        pivot_set = set(sub.pivots)
        self.free_cols = tuple(c for c in range(sub.ambient) if c not in pivot_set)

    @property
    def dim(self) -> int:
        return len(self.free_cols)

    def project(self, vec: Sequence[Scalar]) -> Vector:
        red = self.sub.reduce(vec)
        return tuple(red[c] for c in self.free_cols)

    def lift(self, qvec: Sequence[Scalar]) -> Vector:
        v = [self.sub.field.zero] * self.sub.ambient
        for c, x in zip(self.free_cols, qvec):
            v[c] = self.sub.field.coerce(x)
        return tuple(v)

    def project_subspace(self, space: Subspace) -> Subspace:
        return Subspace.span(self.sub.field, self.dim, [self.project(r) for r in space.rows])
