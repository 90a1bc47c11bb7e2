"""Linear algebra checked against sympy."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cartan import linalg
from cartan.scalar import EXACT, float_field

entries = st.integers(-3, 3)


def matrices(rows=None, cols=None):
    r = st.integers(1, 4) if rows is None else st.just(rows)
    c = st.integers(1, 4) if cols is None else st.just(cols)
    return st.tuples(r, c).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m])


def square_matrices():
    return st.integers(1, 4).flatmap(lambda n: matrices(n, n))


@given(matrices())
def test_rank_matches_sympy(rows):
    m = linalg.as_matrix(rows)
    assert linalg.rank(m) == sympy.Matrix(rows).rank()


@given(matrices())
def test_nullspace_is_a_kernel_basis(rows):
    m = linalg.as_matrix(rows)
    ns = linalg.nullspace(m)
    assert len(ns) == len(sympy.Matrix(rows).nullspace())
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(m, v))
    if ns:
        assert linalg.rank(tuple(ns)) == len(ns)


@given(square_matrices())
def test_det_matches_sympy(rows):
    assert linalg.det(linalg.as_matrix(rows)) == sympy.Matrix(rows).det()


@settings(max_examples=50)
@given(square_matrices())
def test_inverse(rows):
    m = linalg.as_matrix(rows)
    if linalg.det(m) == 0:
        return
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(len(rows))
    assert to_sympy(inv) == sympy.Matrix(rows).inv()


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        linalg.inverse(linalg.as_matrix([[1, 2], [2, 4]]))


def test_max_abs_diff_reports_location():
    a = linalg.as_matrix([[1, 2], [3, 4]])
    b = linalg.as_matrix([[1, 2], [3, Fraction(9, 2)]])
    assert linalg.max_abs_diff(a, b) == (Fraction(1, 2), (1, 1))


def test_float_rank_uses_tolerance():
    f = float_field(1e-9)
    m = linalg.as_matrix([[1.0, 2.0], [2.0, 4.0 + 1e-12]], f)
    assert linalg.rank(m, f) == 1
    assert linalg.rank(m, float_field(1e-15)) == 2


def test_matprod_empty_is_identity():
    assert linalg.matprod([], 3, EXACT) == linalg.identity(3)
