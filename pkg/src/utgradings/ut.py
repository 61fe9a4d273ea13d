"""The Lie algebra of upper triangular n x n matrices under the commutator.

Elements are coordinate vectors over the basis of matrix units e_ij (i <= j),
ordered lexicographically by (i, j) with 1-based indices. The strictly upper
part is the derived subalgebra; its powers form the chain of spans of cells
with j - i >= m. The scalar matrices are the center.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, Scalar
from .kernel import matmul_mod
from .linalg import (
    Subspace,
    Vector,
    is_zero_vector,
    nullspace,
    rref,
    vec_add,
    vec_scale,
    zero_vector,
)

Cell = Tuple[int, int]


@lru_cache(maxsize=None)
def cells(n: int) -> Tuple[Cell, ...]:
    """Basis cells (i, j), 1-based, i <= j, in lexicographic order."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


@lru_cache(maxsize=None)
def cell_index_map(n: int) -> Dict[Cell, int]:
    return {c: k for k, c in enumerate(cells(n))}


def cell_index(n: int, i: int, j: int) -> int:
    return cell_index_map(n)[(i, j)]


def dimension(n: int) -> int:
    return n * (n + 1) // 2


def basis_vector(field: Field, n: int, i: int, j: int) -> Vector:
    v = [field.zero] * dimension(n)
    v[cell_index(n, i, j)] = field.one
    return tuple(v)


def identity_vector(field: Field, n: int) -> Vector:
    v = [field.zero] * dimension(n)
    for i in range(1, n + 1):
        v[cell_index(n, i, i)] = field.one
    return tuple(v)


@lru_cache(maxsize=None)
def bracket_table(n: int) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], ...], ...]:
    """table[c1][c2] lists (cell, sign) terms of [e_c1, e_c2].

    [e_ij, e_kl] = delta_jk e_il - delta_li e_kj, kept only when the result
    stays upper triangular (it always does for i<=j, k<=l).
    """
    cs = cells(n)
    idx = cell_index_map(n)
    table = []
    for (i, j) in cs:
        row = []
        for (k, l) in cs:
            terms: List[Tuple[int, int]] = []
            if j == k:
                terms.append((idx[(i, l)], 1))
            if l == i:
                terms.append((idx[(k, j)], -1))
            row.append(tuple(terms))
        table.append(tuple(row))
    return tuple(table)


def bracket(field: Field, n: int, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    table = bracket_table(n)
    out = [field.zero] * dimension(n)
    for c1, a in enumerate(u):
        if a == 0:
            continue
        trow = table[c1]
        for c2, b in enumerate(v):
            if b == 0:
                continue
            terms = trow[c2]
            if not terms:
                continue
            ab = field.mul(a, b)
            for cell, sign in terms:
                out[cell] = field.add(out[cell], ab if sign > 0 else field.neg(ab))
    return tuple(out)


def left_normed(field: Field, n: int, vecs: Sequence[Sequence[Scalar]]) -> Vector:
    """[[...[v1, v2], v3], ..., vk]; a single vector is returned as-is."""
    if not vecs:
        raise ValueError("left-normed bracket needs at least one vector")
    acc = tuple(field.coerce(x) for x in vecs[0])
    for v in vecs[1:]:
        acc = bracket(field, n, acc, v)
    return acc


def derived_power(field: Field, n: int, m: int) -> Subspace:
    """Span of cells with j - i >= m (m=0 gives the whole algebra)."""
    gens = [basis_vector(field, n, i, j) for (i, j) in cells(n) if j - i >= m]
    return Subspace.span(field, dimension(n), gens)


def center(field: Field, n: int) -> Subspace:
    return Subspace.span(field, dimension(n), [identity_vector(field, n)])


def centralizer(
    field: Field,
    n: int,
    generators: Sequence[Sequence[Scalar]],
    within: Optional[Subspace] = None,
    modulo: Optional[Subspace] = None,
) -> Subspace:
    """{x in within : [x, g] in modulo for all g}; defaults: whole algebra, zero."""
    N = dimension(n)
    if within is None:
        within = Subspace.full(field, N)
    basis = within.rows
    rows = []
    for g in generators:
        images = [bracket(field, n, b, g) for b in basis]
        if modulo is not None:
            images = [modulo.reduce(im) for im in images]
        for t in range(N):
            rows.append([im[t] for im in images])
    sols = nullspace(field, rows, len(basis))
    result = []
    for c in sols:
        v = zero_vector(field, N)
        for ci, b in zip(c, basis):
            if ci != 0:
                v = vec_add(field, v, vec_scale(field, ci, b))
        result.append(v)
    return Subspace.span(field, N, result)


# -- matrix forms -----------------------------------------------------------------


def vector_to_matrix(field: Field, n: int, vec: Sequence[Scalar]) -> List[List[Scalar]]:
    mat = [[field.zero] * n for _ in range(n)]
    for k, (i, j) in enumerate(cells(n)):
        mat[i - 1][j - 1] = field.coerce(vec[k])
    return mat


def matrix_to_vector(field: Field, n: int, mat: Sequence[Sequence[Scalar]]) -> Vector:
    for i in range(n):
        for j in range(i):
            if mat[i][j] != 0:
                raise ValueError("matrix is not upper triangular")
    return tuple(field.coerce(mat[i - 1][j - 1]) for (i, j) in cells(n))


def mat_mul(field: Field, a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    if field.kind == "prime":
        return matmul_mod([list(r) for r in a], [list(r) for r in b], field.p)
    ncols = len(b[0])
    out = []
    for arow in a:
        acc = [field.zero] * ncols
        for k, f in enumerate(arow):
            if f:
                for j in range(ncols):
                    acc[j] = field.add(acc[j], field.mul(f, b[k][j]))
        out.append(acc)
    return out


def mat_inverse(field: Field, mat: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    n = len(mat)
    one, zero = field.one, field.zero
    aug = [
        [field.coerce(x) for x in mat[i]] + [one if j == i else zero for j in range(n)]
        for i in range(n)
    ]
    rows, pivots = rref(field, aug)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return [list(r[n:]) for r in rows]


def tau_matrix(field: Field, n: int, mat: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """Transpose across the antidiagonal: entry (i,j) moves to (n+1-j, n+1-i)."""
    return [[field.coerce(mat[n - 1 - j][n - 1 - i]) for j in range(n)] for i in range(n)]


def tau_vector(field: Field, n: int, vec: Sequence[Scalar]) -> Vector:
    out = [field.zero] * dimension(n)
    for k, (i, j) in enumerate(cells(n)):
        out[cell_index(n, n + 1 - j, n + 1 - i)] = field.coerce(vec[k])
    return tuple(out)


def omega_vector(field: Field, n: int, vec: Sequence[Scalar]) -> Vector:
    return tuple(field.neg(x) for x in tau_vector(field, n, vec))


# -- automorphisms ----------------------------------------------------------------


class Automorphism:
    """Normal form: central twist after inner conjugation after optional flip.

    Applied to x as: flip (x -> -tau(x)) if ``use_omega``, then P x P^{-1}
    with P invertible upper triangular, then x -> x + (sum_i a_i x_ii) I.
    The central part needs 1 + sum_i a_i != 0 to stay bijective. The flip
    only exists as an outer automorphism for n > 2.
    """

    __slots__ = ("field", "n", "conj", "central", "use_omega", "_matrix", "_conj_inv")

    def __init__(
        self,
        field: Field,
        n: int,
        conj: Optional[Sequence[Sequence[Scalar]]] = None,
        central: Optional[Sequence[Scalar]] = None,
        use_omega: bool = False,
    ):
        self.field = field
        self.n = n
        if conj is not None:
            conj = tuple(tuple(field.coerce(x) for x in r) for r in conj)
            for i in range(n):
                if conj[i][i] == 0:
                    raise ValueError("conjugator must be invertible upper triangular")
                for j in range(i):
                    if conj[i][j] != 0:
                        raise ValueError("conjugator must be upper triangular")
        self.conj = conj
        if central is not None:
            central = tuple(field.coerce(x) for x in central)
            s = field.zero
            for a in central:
                s = field.add(s, a)
            if field.add(field.one, s) == 0:
                raise ValueError("central part is singular: 1 + sum of weights is zero")
            if is_zero_vector(central):
                central = None
        self.central = central
        if use_omega and n <= 2:
            raise ValueError("the flip is not an outer automorphism for n <= 2")
        self.use_omega = bool(use_omega)
        self._matrix = None
        self._conj_inv = None

    @classmethod
    def identity(cls, field: Field, n: int) -> "Automorphism":
        return cls(field, n)

    @classmethod
    def inner(cls, field: Field, n: int, conj: Sequence[Sequence[Scalar]]) -> "Automorphism":
        return cls(field, n, conj=conj)

    @classmethod
    def central_twist(cls, field: Field, n: int, weights: Sequence[Scalar]) -> "Automorphism":
        return cls(field, n, central=weights)

    @classmethod
    def flip(cls, field: Field, n: int) -> "Automorphism":
        return cls(field, n, use_omega=True)

    # -- action --------------------------------------------------------------------

    def apply(self, vec: Sequence[Scalar]) -> Vector:
        f, n = self.field, self.n
        v = tuple(f.coerce(x) for x in vec)
        if self.use_omega:
            v = omega_vector(f, n, v)
        if self.conj is not None:
            if self._conj_inv is None:
                self._conj_inv = mat_inverse(f, self.conj)
            m = vector_to_matrix(f, n, v)
            m = mat_mul(f, mat_mul(f, self.conj, m), self._conj_inv)
            v = matrix_to_vector(f, n, m)
        if self.central is not None:
            s = f.zero
            for i in range(1, n + 1):
                s = f.add(s, f.mul(self.central[i - 1], v[cell_index(n, i, i)]))
            if s != 0:
                v = vec_add(f, v, vec_scale(f, s, identity_vector(f, n)))
        return v

    def matrix(self) -> Tuple[Vector, ...]:
        """Row c is the image of basis cell c; image of v is v . M."""
        if self._matrix is None:
            N = dimension(self.n)
            f = self.field
            rows = []
            for c in range(N):
                e = [f.zero] * N
                e[c] = f.one
                rows.append(self.apply(tuple(e)))
            self._matrix = tuple(rows)
        return self._matrix

    def apply_with_matrix(self, vec: Sequence[Scalar]) -> Vector:
        m = self.matrix()
        f = self.field
        if f.kind == "prime":
            return tuple(matmul_mod([list(vec)], [list(r) for r in m], f.p)[0])
        out = zero_vector(f, dimension(self.n))
        for c, x in enumerate(vec):
            if x != 0:
                out = vec_add(f, out, vec_scale(f, x, m[c]))
        return out

    def transport_subspace(self, space: Subspace) -> Subspace:
        return Subspace.span(
            self.field, space.ambient, [self.apply_with_matrix(r) for r in space.rows]
        )

    # -- group structure -----------------------------------------------------------

    def _central_or_zero(self) -> Tuple[Scalar, ...]:
        if self.central is not None:
            return self.central
        return (self.field.zero,) * self.n

    def _conj_or_identity(self) -> Tuple[Tuple[Scalar, ...], ...]:
        if self.conj is not None:
            return self.conj
        f = self.field
        return tuple(
            tuple(f.one if j == i else f.zero for j in range(self.n)) for i in range(self.n)
        )

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other, renormalized into the same normal form.

        The central twist commutes with inner conjugation (upper triangular
        conjugation preserves the diagonal), and moving the flip left
        reverses central weights and antitransposes-and-inverts conjugators.
        """
        if self.field != other.field or self.n != other.n:
            raise ValueError("automorphisms of different algebras")
        f, n = self.field, self.n
        a = self._central_or_zero()
        b = other._central_or_zero()
        P = self._conj_or_identity()
        Q = other._conj_or_identity()
        if self.use_omega:
            b = tuple(reversed(b))
            Q = mat_inverse(f, tau_matrix(f, n, Q))
        one_plus_sa = f.one
        for x in a:
            one_plus_sa = f.add(one_plus_sa, x)
        c = tuple(f.add(ai, f.mul(bi, one_plus_sa)) for ai, bi in zip(a, b))
        PQ = mat_mul(f, P, Q)
        return Automorphism(
            f,
            n,
            conj=PQ,
            central=c,
            use_omega=self.use_omega != other.use_omega,
        )

    def inverse(self) -> "Automorphism":
        f, n = self.field, self.n
        a = self._central_or_zero()
        s = f.zero
        for x in a:
            s = f.add(s, x)
        denom = f.add(f.one, s)
        b = tuple(f.neg(f.div(ai, denom)) for ai in a)
        P_inv = mat_inverse(f, self._conj_or_identity())
        if self.use_omega:
            return Automorphism(
                f, n, conj=tau_matrix(f, n, self._conj_or_identity()),
                central=tuple(reversed(b)), use_omega=True,
            )
        return Automorphism(f, n, conj=P_inv, central=b, use_omega=False)

    def __repr__(self) -> str:
        parts = []
        if self.central is not None:
            parts.append(f"central={self.central}")
        if self.conj is not None:
            parts.append("conj")
        if self.use_omega:
            parts.append("flip")
        return f"Automorphism({', '.join(parts) or 'identity'})"


def count_automorphisms(field: Field, n: int) -> int:
    """Order of the automorphism group over a finite field."""
    if field.kind != "prime":
        raise ValueError("only finite fields have finitely many automorphisms")
    p = field.p
    inner = (p - 1) ** (n - 1) * p ** (n * (n - 1) // 2)
    central = p**n - p ** (n - 1)
    return inner * central * (2 if n > 2 else 1)


def enumerate_automorphisms(field: Field, n: int, budget: int = 10**7) -> List[Automorphism]:
    """All automorphisms: conjugators with top-left entry 1 (scalars act trivially),
    admissible central weights, and the optional flip."""
    total = count_automorphisms(field, n)
    if total > budget:
        raise ValueError(f"automorphism group of order {total} exceeds budget {budget}")
    p = field.p
    strict = [(i, j) for i in range(n) for j in range(i + 1, n)]
    conjs = []

    def fill(cands: List[List[Scalar]], pos: int) -> None:
        if pos == len(strict):
            conjs.append([row[:] for row in cands])
            return
        i, j = strict[pos]
        for x in range(p):
            cands[i][j] = x
            fill(cands, pos + 1)
        cands[i][j] = 0

    from itertools import product

    for diag in product(range(1, p), repeat=n - 1):
        base = [[field.zero] * n for _ in range(n)]
        base[0][0] = field.one
        for i, d in enumerate(diag, start=1):
            base[i][i] = d
        fill(base, 0)

    centrals = [
        a for a in product(range(p), repeat=n) if (1 + sum(a)) % p != 0
    ]
    flips = [False, True] if n > 2 else [False]
    autos = [
        Automorphism(field, n, conj=P, central=a, use_omega=w)
        for w in flips
        for P in conjs
        for a in centrals
    ]
    assert len(autos) == total
    return autos


def random_automorphism(field: Field, n: int, rng: random.Random) -> Automorphism:
    if field.kind == "prime":
        p = field.p
        unit = lambda: rng.randrange(1, p)
        any_ = lambda: rng.randrange(p)
    else:
        unit = lambda: rng.choice([x for x in range(-3, 4) if x])
        any_ = lambda: rng.randint(-3, 3)
    conj = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        conj[i][i] = field.coerce(unit())
        for j in range(i + 1, n):
            conj[i][j] = field.coerce(any_())
    while True:
        a = [field.coerce(any_()) for _ in range(n)]
        s = field.zero
        for x in a:
            s = field.add(s, x)
        if field.add(field.one, s) != 0:
            break
    use_omega = n > 2 and rng.random() < 0.5
    return Automorphism(field, n, conj=conj, central=a, use_omega=use_omega)
