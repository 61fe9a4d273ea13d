"""Pure-Python mod-p linear algebra kernels.

Same call signatures as the compiled extension; used as a fallback when the
extension is unavailable. Matrices are lists of equal-length lists of ints
already reduced into ``[0, p)``.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

BACKEND = "python"


def rref_mod(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form over F_p.

    Returns (nonzero rows in echelon order, pivot column indices).
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = -1
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        row = mat[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                other = mat[i]
                for j in range(c, ncols):
                    other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def reduce_mod(
    vec: Sequence[int], rref_rows: Sequence[Sequence[int]], pivots: Sequence[int], p: int
) -> List[int]:
    """Residue of ``vec`` after eliminating against an RREF basis."""
    v = list(vec)
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        if f:
            for j in range(c, len(v)):
                v[j] = (v[j] - f * row[j]) % p
    return v


def matmul_mod(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    if not a or not b:
        return [[] for _ in a]
    ncols = len(b[0])
    out = []
    for arow in a:
        acc = [0] * ncols
        for k, f in enumerate(arow):
            if f:
                brow = b[k]
                for j in range(ncols):
                    acc[j] += f * brow[j]
        out.append([x % p for x in acc])
    return out
