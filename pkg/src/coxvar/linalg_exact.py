"""Exact linear algebra over Q(sqrt 2).

Rank, nullspace, and solving are done by fraction-free elimination over
Z[sqrt 2]: each row is scaled to integer pairs (a, b) <-> a + b*sqrt(2),
and elimination uses cross-multiplication followed by a gcd reduction of
the row, so no Fraction objects appear in the hot loop.  The cocycle
systems of the 22-generator group (several hundred rows) reduce in
seconds this way, where naive Fraction elimination crawls.

Matrices on the exact backend are numpy arrays with dtype=object holding
QSqrt2 entries, so `@`, `.T` and slicing work the same as for floats.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .scalars import QSqrt2


def exact_array(rows):
    """Build a dtype=object numpy array of QSqrt2 from nested scalars."""
    def conv(x):
        return x if isinstance(x, QSqrt2) else QSqrt2(x)

    arr = np.array(rows, dtype=object)
    flat = arr.reshape(-1)
    for i, x in enumerate(flat):
        flat[i] = conv(x)
    return flat.reshape(arr.shape)


def exact_identity(n):
    out = np.full((n, n), QSqrt2(0), dtype=object)
    for i in range(n):
        out[i, i] = QSqrt2(1)
    return out


def exact_zeros(shape):
    return np.full(shape, QSqrt2(0), dtype=object)


def is_zero_matrix(arr):
    return all(not bool(x) for x in np.asarray(arr, dtype=object).reshape(-1))


# -- integer-pair core -------------------------------------------------

def _row_to_pairs(row):
    """Clear denominators: QSqrt2 row -> list of (int, int) pairs."""
    den = 1
    for x in row:
        den = den * x.a.denominator // gcd(den, x.a.denominator)
        den = den * x.b.denominator // gcd(den, x.b.denominator)
    return [(int(x.a * den), int(x.b * den)) for x in row]


def _reduce_row(row):
    g = 0
    for a, b in row:
        g = gcd(g, gcd(abs(a), abs(b)))
        if g == 1:
            return row
    if g <= 1:
        return row
    return [(a // g, b // g) for a, b in row]


def _echelon(rows, ncols):
    """Fraction-free row echelon form of integer-pair rows.

    Returns (pivot_rows, pivot_cols): pivot_rows[k] has its first
    nonzero entry in column pivot_cols[k], and pivot_cols is increasing.
    """
    work = [r for r in rows if any(a or b for a, b in r)]
    pivots = []
    pivot_cols = []
    for col in range(ncols):
        pivot_idx = None
        best = None
        for i, r in enumerate(work):
            pa, pb = r[col]
            if pa or pb:
                size = abs(pa) + abs(pb)
                if best is None or size < best:
                    best = size
                    pivot_idx = i
                    if size <= 2:
                        break
        if pivot_idx is None:
            continue
        piv = work.pop(pivot_idx)
        pa, pb = piv[col]
        remaining = []
        for r in work:
            ra, rb = r[col]
            if ra or rb:
                # r := pivot*r - r[col]*pivot  (in Z[sqrt2])
                new = []
                for (xa, xb), (ya, yb) in zip(r, piv):
                    na = pa * xa + 2 * pb * xb - (ra * ya + 2 * rb * yb)
                    nb = pa * xb + pb * xa - (ra * yb + rb * ya)
                    new.append((na, nb))
                if any(a or b for a, b in new):
                    remaining.append(_reduce_row(new))
            else:
                remaining.append(r)
        work = remaining
        pivots.append(piv)
        pivot_cols.append(col)
    return pivots, pivot_cols


def _pair_to_q(p):
    return QSqrt2(p[0], p[1])


def exact_rank(matrix):
    arr = np.asarray(matrix, dtype=object)
    if arr.size == 0:
        return 0
    rows = [_row_to_pairs(list(r)) for r in arr]
    _, pivot_cols = _echelon(rows, arr.shape[1])
    return len(pivot_cols)


def exact_nullspace(matrix):
    """Basis of {x : M x = 0} as a list of QSqrt2 object arrays."""
    arr = np.asarray(matrix, dtype=object)
    ncols = arr.shape[1]
    rows = [_row_to_pairs(list(r)) for r in arr]
    pivots, pivot_cols = _echelon(rows, ncols)
    free_cols = [c for c in range(ncols) if c not in set(pivot_cols)]
    basis = []
    for free in free_cols:
        x = [QSqrt2(0)] * ncols
        x[free] = QSqrt2(1)
        # back-substitute pivot variables, bottom pivot first
        for k in range(len(pivots) - 1, -1, -1):
            row = pivots[k]
            col = pivot_cols[k]
            acc = QSqrt2(0)
            for j in range(col + 1, ncols):
                if x[j]:
                    a, b = row[j]
                    if a or b:
                        acc = acc + QSqrt2(a, b) * x[j]
            if acc:
                x[col] = -acc / _pair_to_q(row[col])
        basis.append(np.array(x, dtype=object))
    return basis


def exact_solve(matrix, rhs):
    """Solve M x = rhs exactly; return None if inconsistent.

    For underdetermined systems an arbitrary particular solution is
    returned (free variables set to zero).
    """
    arr = np.asarray(matrix, dtype=object)
    b = np.asarray(rhs, dtype=object)
    nrows, ncols = arr.shape
    aug = [list(r) + [v] for r, v in zip(arr, b)]
    rows = [_row_to_pairs(r) for r in aug]
    pivots, pivot_cols = _echelon(rows, ncols + 1)
    if ncols in pivot_cols:
        return None  # pivot in the rhs column: inconsistent
    x = [QSqrt2(0)] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        row = pivots[k]
        col = pivot_cols[k]
        # echelon row says: pivot*x[col] + sum_{j>col} R_j x_j = c
        acc = -_pair_to_q(row[ncols])
        for j in range(col + 1, ncols):
            if x[j]:
                a, bb = row[j]
                if a or bb:
                    acc = acc + QSqrt2(a, bb) * x[j]
        x[col] = -acc / _pair_to_q(row[col])
    return np.array(x, dtype=object)


def exact_inverse(matrix):
    arr = np.asarray(matrix, dtype=object)
    n = arr.shape[0]
    cols = []
    for k in range(n):
        e = [QSqrt2(0)] * n
        e[k] = QSqrt2(1)
        x = exact_solve(arr, e)
        if x is None:
            raise ZeroDivisionError("matrix is singular over Q(sqrt 2)")
        cols.append(x)
    return np.array(cols, dtype=object).T


def exact_in_span(vectors, target):
    """Is target in the exact linear span of the given vectors?"""
    if not vectors:
        return is_zero_matrix(target)
    m = np.array(vectors, dtype=object)
    r0 = exact_rank(m)
    r1 = exact_rank(np.vstack([m, np.asarray(target, dtype=object)[None, :]]))
    return r0 == r1
