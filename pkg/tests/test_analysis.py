import sympy
import pytest
from hypothesis import given, settings, strategies as st

from cartan import (
    OrthogonalBasis,
    OrthogonalMap,
    Signature,
    Vector,
    build_report,
    compose_reflections,
    decompose,
    grade_lower_bound,
    householder_matrix,
    kernel_analysis,
    linalg,
)
from cartan.factorization import ReflectionSequence

import golden
from strategies import invertible_vectors, reflection_products, signatures

R23 = golden.SIG
E = OrthogonalBasis.canonical(R23)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m])


def test_householder_examples():
    assert householder_matrix(Vector.basis(5, 4), E) == golden.A[0]
    for c, a in zip(golden.C_VECTORS, golden.A):
        assert householder_matrix(c, E) == a
    for d, b, cm in zip(golden.D_VECTORS, golden.B, golden.C):
        assert householder_matrix(d, E) == b
        assert householder_matrix(d, golden.W) == cm


def test_householder_rejects_isotropic():
    with pytest.raises(ValueError):
        householder_matrix(Vector([1, 0, 1, 0, 0]), E)


@settings(max_examples=100)
@given(st.data())
def test_householder_matches_composition(data):
    sig = data.draw(signatures(max_n=5))
    s = data.draw(invertible_vectors(sig))
    basis = OrthogonalBasis.canonical(sig)
    h = householder_matrix(s, basis)
    assert h == compose_reflections([s], sig, basis.field)
    assert linalg.matmul(h, h) == linalg.identity(sig.n)


def test_grade_bounds():
    assert grade_lower_bound(golden.C_VECTORS, R23, E.field) == 3
    assert grade_lower_bound([Vector.basis(5, 0)], R23, E.field) == 1
    assert grade_lower_bound([], R23, E.field) == 0
    empty = ReflectionSequence((), OrthogonalMap(linalg.identity(5), E))
    assert grade_lower_bound(empty) == 0


def test_kernel_examples():
    k = kernel_analysis(OrthogonalMap(linalg.identity(5), E))
    assert (k.dim, k.nondegenerate, k.perp_dim) == (5, True, 0)
    phi = compose_reflections([Vector.basis(5, 0)], R23, E.field)
    k = kernel_analysis(OrthogonalMap(phi, E))
    assert (k.dim, k.nondegenerate, k.perp_dim) == (4, True, 1)


def test_example_kernel_against_sympy():
    t = to_sympy(golden.T_E)
    g = sympy.diag(1, 1, -1, -1, -1)
    null = (t - sympy.eye(5)).nullspace()
    gram = sympy.Matrix.hstack(*null).T * g * sympy.Matrix.hstack(*null)
    k = kernel_analysis(OrthogonalMap(golden.T_E, E))
    assert k.dim == len(null) == 2
    assert k.perp_dim == 3
    # the fixed plane is totally isotropic, so the form is degenerate on it
    assert gram == sympy.zeros(2, 2)
    assert k.nondegenerate is False


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_kernel_matches_sympy(data):
    sig = data.draw(signatures(max_n=4))
    _, matrix = data.draw(reflection_products(sig))
    k = kernel_analysis(OrthogonalMap(matrix, OrthogonalBasis.canonical(sig)))
    t = to_sympy(matrix)
    null = (t - sympy.eye(sig.n)).nullspace()
    assert k.dim == len(null)
    if null:
        basis = sympy.Matrix.hstack(*null)
        gram = basis.T * sympy.diag(*sig.metric) * basis
        assert k.nondegenerate == (gram.det() != 0)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_nondegenerate_kernel_gives_minimal_count(data):
    sig = data.draw(signatures(max_n=5))
    _, matrix = data.draw(reflection_products(sig))
    report = build_report(OrthogonalMap(matrix, OrthogonalBasis.canonical(sig)))
    assert report.grade_lower_bound <= report.achieved_count <= sig.n
    if report.kernel_nondegenerate:
        perp = sig.n - report.kernel_dim
        assert report.grade_lower_bound == perp == report.achieved_count
        assert report.minimality_certified


def test_report_canonical_example():
    r = build_report(OrthogonalMap(golden.T_E, E))
    assert (r.achieved_count, r.grade_lower_bound, r.recomposition_ok) == (5, 3, True)
    assert r.householder_matrices == golden.A
    assert not r.minimality_certified
    assert any("not certified" in w for w in r.warnings)


def test_report_w_example():
    r = build_report(OrthogonalMap.from_canonical(golden.T_E, golden.W))
    assert (r.achieved_count, r.grade_lower_bound, r.minimality_certified) == (3, 3, True)
    assert r.householder_matrices == golden.C
    assert linalg.matprod(r.householder_matrices, 5) == golden.T_W


def test_report_identity():
    r = build_report(OrthogonalMap(linalg.identity(5), E))
    assert (r.achieved_count, r.grade_lower_bound, r.kernel_dim) == (0, 0, 5)
    assert r.minimality_certified and r.warnings == ()


def test_count_parity_and_grade_bound_agree():
    seq = decompose(OrthogonalMap(golden.T_E, E))
    assert (len(seq) - grade_lower_bound(seq)) % 2 == 0
