# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p linear algebra kernels.

Mirrors the pure-Python module. Entries are ints in [0, p) with p < 2^31,
so every product fits in a 64-bit signed integer.
"""

from libc.stdlib cimport malloc, free

BACKEND = "compiled"


cdef long long _inv_mod(long long a, long long p):
    # Fermat: a^(p-2) mod p
    cdef long long result = 1
    cdef long long base = a % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod(rows, long long p):
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return [], []
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return [], []
    cdef long long *mat = <long long *> malloc(nrows * ncols * sizeof(long long))
    if mat == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r, piv
    cdef long long f, inv
    cdef long long *rowp
    cdef long long *othp
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                mat[i * ncols + j] = row[j]
        pivots = []
        r = 0
        for c in range(ncols):
            piv = -1
            for i in range(r, nrows):
                if mat[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    f = mat[r * ncols + j]
                    mat[r * ncols + j] = mat[piv * ncols + j]
                    mat[piv * ncols + j] = f
            rowp = mat + r * ncols
            inv = _inv_mod(rowp[c], p)
            if inv != 1:
                for j in range(c, ncols):
                    rowp[j] = rowp[j] * inv % p
            for i in range(nrows):
                if i != r and mat[i * ncols + c] != 0:
                    othp = mat + i * ncols
                    f = othp[c]
                    for j in range(c, ncols):
                        othp[j] = (othp[j] - f * rowp[j]) % p
                        if othp[j] < 0:
                            othp[j] += p
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        out = [[mat[i * ncols + j] for j in range(ncols)] for i in range(r)]
        return out, pivots
    finally:
        free(mat)


def reduce_mod(vec, rref_rows, pivots, long long p):
    """Residue of ``vec`` after eliminating against an RREF basis."""
    cdef Py_ssize_t n = len(vec)
    cdef Py_ssize_t nb = len(rref_rows)
    cdef long long *v = <long long *> malloc(n * sizeof(long long))
    if v == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c
    cdef long long f
    try:
        for j in range(n):
            v[j] = vec[j]
        for i in range(nb):
            c = pivots[i]
            f = v[c]
            if f != 0:
                row = rref_rows[i]
                for j in range(c, n):
                    v[j] = (v[j] - f * <long long> row[j]) % p
                    if v[j] < 0:
                        v[j] += p
        return [v[j] for j in range(n)]
    finally:
        free(v)


def matmul_mod(a, b, long long p):
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    if na == 0 or nb == 0:
        return [[] for _ in range(na)]
    cdef Py_ssize_t ncols = len(b[0])
    cdef long long *bm = <long long *> malloc(nb * ncols * sizeof(long long))
    cdef long long *acc = <long long *> malloc(ncols * sizeof(long long))
    if bm == NULL or acc == NULL:
        if bm != NULL:
            free(bm)
        if acc != NULL:
            free(acc)
        raise MemoryError()
    cdef Py_ssize_t i, j, k
    cdef long long f
    try:
        for i in range(nb):
            row = b[i]
            for j in range(ncols):
                bm[i * ncols + j] = row[j]
        out = []
        for i in range(na):
            arow = a[i]
            for j in range(ncols):
                acc[j] = 0
            for k in range(nb):
                f = arow[k]
                if f != 0:
                    for j in range(ncols):
                        acc[j] = (acc[j] + f * bm[k * ncols + j]) % p
            out.append([acc[j] for j in range(ncols)])
        return out
    finally:
        free(bm)
        free(acc)
