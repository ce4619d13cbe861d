from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxvar.linalg_exact import (exact_array, exact_identity, exact_in_span, exact_inverse,
                                 exact_nullspace, exact_rank, exact_solve, is_zero_matrix)
from coxvar.scalars import QSqrt2


def _rref_rank(rows, ncols):
    """Independent oracle: plain Fraction-pair Gaussian elimination."""
    work = [[(Fraction(e.a), Fraction(e.b)) for e in r] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work))
                    if work[i][col] != (Fraction(0), Fraction(0))), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pa, pb = work[rank][col]
        norm = pa * pa - 2 * pb * pb
        inv = (pa / norm, -pb / norm)
        work[rank] = [(a * inv[0] + 2 * b * inv[1], a * inv[1] + b * inv[0])
                      for a, b in work[rank]]
        for i in range(len(work)):
            if i == rank:
                continue
            fa, fb = work[i][col]
            if (fa, fb) != (0, 0):
                work[i] = [(a - (fa * c + 2 * fb * d), b - (fa * d + fb * c))
                           for (a, b), (c, d) in zip(work[i], work[rank])]
        rank += 1
    return rank


def test_nullspace_known():
    m = exact_array([[1, 1, 0], [0, 0, 1]])
    ns = exact_nullspace(m)
    assert len(ns) == 1
    assert all(not bool(x) for x in m @ ns[0])


def test_rank_and_inverse():
    m = exact_array([[1, QSqrt2(0, 1)], [QSqrt2(0, 1), 1]])  # det = 1 - 2 = -1
    assert exact_rank(m) == 2
    inv = exact_inverse(m)
    assert is_zero_matrix(m @ inv - exact_identity(2))


def test_solve_consistent_and_inconsistent():
    m = exact_array([[1, 0], [0, 1], [1, 1]])
    rhs = exact_array([1, QSqrt2(0, 1), QSqrt2(1, 1)])
    x = exact_solve(m, rhs)
    assert x is not None and is_zero_matrix(m @ x - rhs)
    bad = exact_array([1, QSqrt2(0, 1), 0])
    assert exact_solve(m, bad) is None


def test_singular_inverse_raises():
    m = exact_array([[1, 1], [1, 1]])
    with pytest.raises(ZeroDivisionError):
        exact_inverse(m)


def test_in_span():
    v1 = exact_array([1, 0, QSqrt2(0, 1)])
    v2 = exact_array([0, 1, 1])
    target = exact_array([2, 3, QSqrt2(3, 2)])
    assert exact_in_span([v1, v2], target)
    assert not exact_in_span([v1, v2], exact_array([0, 0, 1]))


small = st.integers(min_value=-4, max_value=4)
entry = st.builds(lambda a, b: QSqrt2(a, b), small, small)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.data())
def test_rank_nullity_random(nrows, ncols, data):
    rows = [[data.draw(entry) for _ in range(ncols)] for _ in range(nrows)]
    m = exact_array(rows)
    r = exact_rank(m)
    ns = exact_nullspace(m)
    assert r == _rref_rank(m, ncols)
    assert r + len(ns) == ncols
    for v in ns:
        assert all(not bool(x) for x in m @ v)
