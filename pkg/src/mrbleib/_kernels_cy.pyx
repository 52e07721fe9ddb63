# cython: language_level=3, boundscheck=False
"""Compiled elimination and multiplication kernels over Fractions.

Rows are scaled to integers once, all row operations stay fraction-free
with per-row content normalization, and only the final echelon rows are
converted back to Fractions.  The output is bit-identical to the pure
backend because the reduced row echelon form of a matrix is unique.
"""

from fractions import Fraction
from math import gcd

_ZERO = Fraction(0)


def rref(rows):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t pr = 0, pc, r, c, best
    mat = []
    for row in rows:
        den = 1
        for e in row:
            d = e.denominator
            if d != 1:
                den = den // gcd(den, d) * d
        if den == 1:
            mat.append([e.numerator for e in row])
        else:
            mat.append([e.numerator * (den // e.denominator) for e in row])
    pivots = []
    for pc in range(n):
        best = -1
        best_abs = None
        for r in range(pr, m):
            v = mat[r][pc]
            if v != 0:
                a = -v if v < 0 else v
                if best < 0 or a < best_abs:
                    best = r
                    best_abs = a
        if best < 0:
            continue
        if best != pr:
            mat[pr], mat[best] = mat[best], mat[pr]
        prow = mat[pr]
        piv = prow[pc]
        for r in range(m):
            if r == pr:
                continue
            row = mat[r]
            v = row[pc]
            if v == 0:
                continue
            g = gcd(piv, v)
            fa = piv // g
            fb = v // g
            content = 0
            for c in range(n):
                w = fa * row[c] - fb * prow[c]
                row[c] = w
                if w != 0:
                    content = gcd(content, w)
            if content > 1:
                for c in range(n):
                    if row[c]:
                        row[c] //= content
        pivots.append(pc)
        pr += 1
        if pr == m:
            break
    out = []
    for r in range(m):
        row = mat[r]
        if r < len(pivots):
            piv = row[pivots[r]]
            out.append([_ZERO if v == 0 else Fraction(v, piv) for v in row])
        else:
            out.append([_ZERO] * n)
    return out, pivots


def matmul(a, b):
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t inner = len(a[0]) if m else 0
    cdef Py_ssize_t n = len(b[0]) if b else 0
    cdef Py_ssize_t i, t, j
    da = 1
    for row in a:
        for e in row:
            d = e.denominator
            if d != 1:
                da = da // gcd(da, d) * d
    db = 1
    for row in b:
        for e in row:
            d = e.denominator
            if d != 1:
                db = db // gcd(db, d) * d
    if da == 1:
        aint = [[e.numerator for e in row] for row in a]
    else:
        aint = [[e.numerator * (da // e.denominator) for e in row] for row in a]
    if db == 1:
        bint = [[e.numerator for e in row] for row in b]
    else:
        bint = [[e.numerator * (db // e.denominator) for e in row] for row in b]
    scale = da * db
    zero = 0
    acc = [[zero] * n for _ in range(m)]
    for i in range(m):
        arow = aint[i]
        orow = acc[i]
        for t in range(inner):
            v = arow[t]
            if v != 0:
                brow = bint[t]
                for j in range(n):
                    w = brow[j]
                    if w != 0:
                        orow[j] += v * w
    if scale == 1:
        return [[_ZERO if v == 0 else Fraction(v) for v in row] for row in acc]
    return [[_ZERO if v == 0 else Fraction(v, scale) for v in row] for row in acc]
