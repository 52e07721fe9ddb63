"""Pure-Python elimination and multiplication kernels over Fractions.

These are the hot loops behind rank/kernel/solve and matrix products.  A
compiled twin (``_kernels_cy``) implements the same contract on integer
rows; both must return bit-identical results, which is guaranteed because
the reduced row echelon form of a rational matrix is unique regardless of
pivoting strategy.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form of a list-of-rows rational matrix.

    Returns ``(reduced_rows, pivot_cols)``.  Pivot rows come first in pivot
    order, zero rows last; every pivot entry is 1 and is the only nonzero
    entry in its column.  Pivot selection favors the smallest absolute
    numerator to curb coefficient growth (the result does not depend on it).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [list(row) for row in rows]
    pivots = []
    pr = 0
    for pc in range(n):
        best = -1
        best_key = None
        for r in range(pr, m):
            e = mat[r][pc]
            if e:
                key = abs(e.numerator)
                if best < 0 or key < best_key:
                    best, best_key = r, key
        if best < 0:
            continue
        if best != pr:
            mat[pr], mat[best] = mat[best], mat[pr]
        prow = mat[pr]
        piv = prow[pc]
        if piv != _ONE:
            inv = _ONE / piv
            for c in range(pc, n):
                if prow[c]:
                    prow[c] *= inv
        for r in range(m):
            if r == pr:
                continue
            f = mat[r][pc]
            if f:
                row = mat[r]
                for c in range(pc, n):
                    if prow[c]:
                        row[c] -= f * prow[c]
        pivots.append(pc)
        pr += 1
        if pr == m:
            break
    return mat, pivots


def matmul(a, b):
    """Product of two list-of-rows rational matrices, skipping zero entries."""
    m = len(a)
    inner = len(a[0]) if m else 0
    n = len(b[0]) if b else 0
    out = [[_ZERO] * n for _ in range(m)]
    for i in range(m):
        arow = a[i]
        orow = out[i]
        for t in range(inner):
            v = arow[t]
            if v:
                brow = b[t]
                for j in range(n):
                    w = brow[j]
                    if w:
                        orow[j] += v * w
    return out
