"""Constructive classification of gradings on the upper triangular Lie algebra.

Every verified grading is reduced, by an explicit chain of inner
conjugations, to a grading whose matrix-unit frame (or its symmetric/skew
counterpart across the antidiagonal) is homogeneous. The branch taken is
decided by the order-2 degree carried by the image of e11 + e_nn in the
quotient by the strictly upper part plus the scalar line.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .descriptors import GradingDescriptor, canonical
from .fields import Field, Scalar
from .gradings import Grading
from .groups import GroupElement
from .linalg import Subspace, Vector, is_zero_vector, vec_add, vec_scale, vec_sub
from . import ut


class ClassificationError(ValueError):
    """A step of the classification found no witness the theory promises."""

    def __init__(self, step: str, message: str):
        super().__init__(f"{step}: {message}")
        self.step = step


@dataclass
class ClassificationTrace:
    g_main: Optional[GroupElement] = None
    branch: str = ""
    conjugators: List[Tuple[Tuple[Scalar, ...], ...]] = dc_field(default_factory=list)
    shifts: List[Vector] = dc_field(default_factory=list)
    intermediates: Dict[str, Subspace] = dc_field(default_factory=dict)
    epsilons: List[Scalar] = dc_field(default_factory=list)

    def describe(self, grading: Grading) -> str:
        lines = [f"branch: {self.branch}"]
        if self.g_main is not None:
            lines.append(f"main division degree: {grading.group.format_element(self.g_main)}")
        lines.append(f"conjugations applied: {len(self.conjugators)}")
        for name, space in self.intermediates.items():
            lines.append(f"dim {name} = {space.dim}")
        if self.epsilons:
            lines.append(
                "mirror coefficients: " + ", ".join(grading.field.format(e) for e in self.epsilons)
            )
        return "\n".join(lines)


# -- the main-division degree -----------------------------------------------------


def main_division_degree(
    grading: Grading, trace: Optional[ClassificationTrace] = None
) -> GroupElement:
    """Degree of the image of e11 + e_nn modulo (strict part + scalars); order divides 2."""
    n, field, group = grading.n, grading.field, grading.group
    if n < 3:
        raise ClassificationError("main-division", "requires n >= 3")
    N = ut.dimension(n)
    J = ut.derived_power(field, n, 1)
    J2 = ut.derived_power(field, n, 2)
    S = ut.centralizer(field, n, ut.derived_power(field, n, n - 2).rows)
    T = ut.centralizer(field, n, S.rows, modulo=J2)
    corners = Subspace.span(
        field, N, [ut.basis_vector(field, n, 1, 1), ut.basis_vector(field, n, n, n)]
    )
    scalars = ut.center(field, n)
    W = T.add(J).add(scalars)
    expected = corners.add(J).add(scalars)
    if W != expected:
        raise ClassificationError(
            "main-division", "centralizer chain does not land on the corner frame"
        )
    if trace is not None:
        trace.intermediates["S"] = S
        trace.intermediates["T"] = T
        trace.intermediates["W"] = W
    Z = J.add(scalars)
    quot = grading.quotient_grading(Z)
    v = quot.qmap.project(
        vec_add(field, ut.basis_vector(field, n, 1, 1), ut.basis_vector(field, n, n, n))
    )
    for g, comp in quot.components.items():
        if comp.contains(v):
            if group.order(g) not in (1, 2):
                raise ClassificationError("main-division", "degree does not square to identity")
            if field.characteristic() == 2 and g != group.identity:
                raise ClassificationError(
                    "main-division", "nontrivial degree in characteristic 2"
                )
            return g
    raise ClassificationError(
        "main-division", "image of the corner sum is not homogeneous in the quotient"
    )


# -- semihomogenization -----------------------------------------------------------


def semihomogenize(
    grading: Grading,
    target: Vector,
    degree: GroupElement,
    allowed_shift: Subspace,
) -> Optional[Vector]:
    """Shift r in the allowed space with target + r in A_degree + scalars, or None."""
    from .linalg import affine_solve

    field = grading.field
    comp = grading.components.get(
        grading.group.coerce(degree), Subspace.zero(field, ut.dimension(grading.n))
    )
    goal = comp.add(ut.center(field, grading.n))
    solution = affine_solve(field, target, allowed_shift.rows, goal)
    if solution is None:
        return None
    return vec_sub(field, solution, target)


# -- the commuting adjustment (type2 frame) ---------------------------------------


def commuting_adjustment(
    grading: Grading, x_minus: Vector, x_plus: Vector, corner: Tuple[int, int]
) -> Tuple[Vector, Vector]:
    """Adjust a semihomogeneous frame pair so its bracket is exactly zero.

    First replacement absorbs the bracket defect into the skew element; the
    remaining defect is a multiple of the corner cell and is halved away.
    """
    field, n = grading.field, grading.n
    if field.characteristic() == 2:
        raise ClassificationError("commuting-adjustment", "unavailable in characteristic 2")
    b = ut.bracket(field, n, x_minus, x_plus)
    x_minus = vec_add(field, x_minus, ut.bracket(field, n, x_plus, b))
    b = ut.bracket(field, n, x_minus, x_plus)
    ci = ut.cell_index(n, *corner)
    w = b[ci]
    rest = list(b)
    rest[ci] = field.zero
    if not is_zero_vector(rest):
        raise ClassificationError(
            "commuting-adjustment", "bracket defect is not confined to the corner cell"
        )
    if w != 0:
        half_w = field.div(w, field.coerce(2))
        x_plus = vec_sub(
            field, x_plus, vec_scale(field, half_w, ut.basis_vector(field, n, *corner))
        )
    if not is_zero_vector(ut.bracket(field, n, x_minus, x_plus)):
        raise ClassificationError("commuting-adjustment", "frame pair still fails to commute")
    return x_minus, x_plus


# -- simultaneous diagonalization -------------------------------------------------


def _bottom_echelon(field: Field, vectors: List[Vector], n: int) -> Dict[int, Vector]:
    """Basis with distinct lowest nonzero positions, keyed by that position (1-based)."""
    from .linalg import rref

    reversed_rows = [list(reversed(v)) for v in vectors]
    rows, pivots = rref(field, reversed_rows)
    out = {}
    for row, p in zip(rows, pivots):
        vec = tuple(reversed(row))
        out[n - p] = vec
    return out


def diagonalize_frame(
    field: Field,
    n: int,
    elements: List[Vector],
    col_targets: Dict[int, Tuple[Scalar, ...]],
    block: Tuple[int, int],
) -> List[List[Scalar]]:
    """Upper triangular P with P x P^{-1} diagonal for each commuting element.

    ``col_targets[c]`` is the tuple of intended eigenvalues at column c for
    the listed elements; columns outside [block] are fixed pointwise, so the
    conjugation acts only inside the block.
    """
    lo, hi = block
    mats = [ut.vector_to_matrix(field, n, x) for x in elements]
    block_coords = Subspace.span(
        field, n, [[field.one if k == c else field.zero for k in range(n)] for c in range(lo - 1, hi)]
    )
    eigen_cache: Dict[Tuple[Scalar, ...], Dict[int, Vector]] = {}
    columns: List[Vector] = []
    for c in range(1, n + 1):
        if not (lo <= c <= hi):
            columns.append(tuple(field.one if k == c - 1 else field.zero for k in range(n)))
            continue
        lam = tuple(field.coerce(x) for x in col_targets[c])
        if lam not in eigen_cache:
            from .linalg import nullspace

            stacked = []
            for mat, ev in zip(mats, lam):
                for r in range(n):
                    row = [field.coerce(mat[r][k]) for k in range(n)]
                    row[r] = field.sub(row[r], ev)
                    stacked.append(row)
            kernel = Subspace.span(field, n, nullspace(field, stacked, n))
            kernel = kernel.intersect(block_coords)
            eigen_cache[lam] = _bottom_echelon(field, list(kernel.rows), n)
        vec = eigen_cache[lam].get(c)
        if vec is None:
            raise ClassificationError(
                "diagonalize", f"no eigenvector with lowest position {c} (non-diagonalizable frame)"
            )
        columns.append(vec)
    Q = [[columns[c][r] for c in range(n)] for r in range(n)]
    for r in range(n):
        for c in range(r):
            if Q[r][c] != 0:
                raise ClassificationError("diagonalize", "conjugator is not upper triangular")
    return ut.mat_inverse(field, Q)


def _apply_conjugation(
    grading: Grading, P: List[List[Scalar]], trace: ClassificationTrace
) -> Grading:
    auto = ut.Automorphism.inner(grading.field, grading.n, P)
    trace.conjugators.append(tuple(tuple(r) for r in P))
    return grading.transport(auto)


# -- branches ---------------------------------------------------------------------


def _classify_n2(grading: Grading, trace: ClassificationTrace) -> GradingDescriptor:
    field, group = grading.field, grading.group
    trace.branch = "n2"
    witness = None
    for g in sorted(grading.components):
        for v in grading.components[g].rows:
            if v[0] != v[2]:  # distinct diagonal entries at cells (1,1) and (2,2)
                witness = (g, v)
                break
        if witness:
            break
    if witness is None:
        raise ClassificationError("n2", "no homogeneous element with distinct diagonal")
    g, v = witness
    c = field.div(v[1], field.sub(v[0], v[2]))
    P = [[field.one, c], [field.zero, field.one]]
    cur = _apply_conjugation(grading, P, trace)
    if g != group.identity:
        raise ClassificationError("n2", "diagonalized witness is not of trivial degree")
    eta1 = cur.degree_of(ut.basis_vector(field, 2, 1, 2))
    t = cur.degree_of(ut.identity_vector(field, 2))
    if eta1 is None or t is None:
        raise ClassificationError("n2", "strict cell or identity is not homogeneous")
    return GradingDescriptor("elementary", 2, group, t, (eta1,))


def _classify_elementary(grading: Grading, trace: ClassificationTrace) -> GradingDescriptor:
    field, group, n = grading.field, grading.group, grading.n
    trace.branch = "elementary"
    N = ut.dimension(n)
    cur = grading
    for k in range(1, n):
        ek = ut.basis_vector(field, n, k, k)
        shift_space = Subspace.span(
            field, N, [ut.basis_vector(field, n, k, j) for j in range(k + 1, n + 1)]
        )
        r = semihomogenize(cur, ek, group.identity, shift_space)
        if r is None:
            raise ClassificationError(
                "elementary", f"diagonal cell {k} admits no degree-1 semihomogeneous shift"
            )
        trace.shifts.append(r)
        if is_zero_vector(r):
            continue
        x = vec_add(field, ek, r)
        targets = {c: (field.one if c == k else field.zero,) for c in range(k, n + 1)}
        P = diagonalize_frame(field, n, [x], targets, (k, n))
        cur = _apply_conjugation(cur, P, trace)
    eta = []
    for i in range(1, n):
        d = cur.degree_of(ut.basis_vector(field, n, i, i + 1))
        if d is None:
            raise ClassificationError(
                "elementary", f"superdiagonal cell ({i},{i + 1}) is not homogeneous"
            )
        eta.append(d)
    # all remaining cells must be homogeneous of the product degree
    for (i, j) in ut.cells(n):
        if j <= i + 1:
            continue
        d = cur.degree_of(ut.basis_vector(field, n, i, j))
        if d is None:
            raise ClassificationError("elementary", f"cell ({i},{j}) is not homogeneous")
    t = cur.degree_of(ut.identity_vector(field, n))
    if t is None:
        raise ClassificationError("elementary", "identity is not homogeneous")
    return GradingDescriptor("elementary", n, group, t, tuple(eta))


def _classify_type2(
    grading: Grading, g: GroupElement, trace: ClassificationTrace
) -> GradingDescriptor:
    field, group, n = grading.field, grading.group, grading.n
    trace.branch = "type2"
    N = ut.dimension(n)
    cur = grading
    for i in range(1, n // 2 + 1):
        j = n + 1 - i
        frame_cells = [(i, k) for k in range(i + 1, j + 1)] + [
            (k, j) for k in range(i + 1, j)
        ]
        shift_space = Subspace.span(
            field, N, [ut.basis_vector(field, n, a, b) for (a, b) in frame_cells]
        )
        eii = ut.basis_vector(field, n, i, i)
        ejj = ut.basis_vector(field, n, j, j)
        x_minus0 = vec_sub(field, eii, ejj)
        x_plus0 = vec_add(field, eii, ejj)
        rm = semihomogenize(cur, x_minus0, group.identity, shift_space)
        rp = semihomogenize(cur, x_plus0, g, shift_space)
        if rm is None or rp is None:
            raise ClassificationError(
                "type2", f"corner pair at block {i} admits no semihomogeneous shifts"
            )
        trace.shifts.extend([rm, rp])
        x_minus = vec_add(field, x_minus0, rm)
        x_plus = vec_add(field, x_plus0, rp)
        x_minus, x_plus = commuting_adjustment(cur, x_minus, x_plus, (i, j))
        minus_one = field.neg(field.one)
        targets = {}
        for c in range(i, j + 1):
            if c == i:
                targets[c] = (field.one, field.one)
            elif c == j:
                targets[c] = (minus_one, field.one)
            else:
                targets[c] = (field.zero, field.zero)
        P = diagonalize_frame(field, n, [x_minus, x_plus], targets, (i, j))
        cur = _apply_conjugation(cur, P, trace)
    eta: List[Optional[GroupElement]] = [None] * (n - 1)
    for i in range(1, n // 2 + 1):
        lo = ut.basis_vector(field, n, i, i + 1)
        hi = ut.basis_vector(field, n, n - i, n - i + 1)
        if i == n - i:
            # middle superdiagonal cell (n even): self-mirror, degree g * eta_i
            d = cur.degree_of(lo)
            if d is None:
                raise ClassificationError("type2", f"middle cell ({i},{i + 1}) not homogeneous")
            eta[i - 1] = group.compose(g, d)
            continue
        W = Subspace.span(field, N, [lo, hi])
        pieces = []
        for d in sorted(cur.components):
            inter = W.intersect(cur.components[d])
            if inter.dim == 1:
                pieces.append((d, inter.rows[0]))
            elif inter.dim == 2:
                raise ClassificationError("type2", f"mirror pair space at {i} is not split")
        if len(pieces) != 2:
            raise ClassificationError("type2", f"mirror pair space at {i} is not graded")
        (d1, v1), (d2, v2) = pieces
        if group.compose(g, d1) != d2:
            raise ClassificationError(
                "type2", f"mirror pair degrees at {i} are not a g-twist of each other"
            )
        eta_i = min(d1, d2)
        eta[i - 1] = eta_i
        eta[n - 1 - i] = eta_i
        lo_idx = ut.cell_index(n, i, i + 1)
        hi_idx = ut.cell_index(n, n - i, n - i + 1)
        for _, v in pieces:
            if v[lo_idx] != 0:
                trace.epsilons.append(field.div(v[hi_idx], v[lo_idx]))
    if any(e is None for e in eta):
        raise ClassificationError("type2", "incomplete superdiagonal degree extraction")
    t = cur.degree_of(ut.identity_vector(field, n))
    if t is None:
        raise ClassificationError("type2", "identity is not homogeneous")
    return GradingDescriptor("type2", n, group, t, tuple(eta), g)


# -- entry point ------------------------------------------------------------------


def classify(grading: Grading) -> Tuple[GradingDescriptor, ClassificationTrace]:
    """Canonical descriptor of a verified grading plus the normalization trace."""
    report = grading.verify()
    if not report.ok:
        raise ClassificationError("verify", report.summary())
    trace = ClassificationTrace()
    if grading.n == 2:
        d = _classify_n2(grading, trace)
    else:
        g = main_division_degree(grading, trace)
        trace.g_main = g
        if g == grading.group.identity:
            d = _classify_elementary(grading, trace)
        else:
            d = _classify_type2(grading, g, trace)
    return canonical(d), trace
