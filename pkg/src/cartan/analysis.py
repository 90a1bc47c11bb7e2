"""Householder matrices, grade bounds, fixed-space analysis, and the report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .clifford import grade, product_of_vectors
from .factorization import (
    InvariantError,
    OrthogonalMap,
    ReflectionSequence,
    decompose,
    recompose,
)
from .linalg import Matrix
from .space import OrthogonalBasis, Vector, gram_matrix, scalar_product, square


def householder_matrix(s: Vector, basis: OrthogonalBasis) -> Matrix:
    """Matrix of the reflection in ``s`` with respect to an orthogonal basis.

    With ``b_i = B(s, w_i)`` and ``g_i = w_i^2``, the off-diagonal entries are
    ``-2 b_j b_l / (s^2 g_l)`` and the diagonal ones
    ``-(b_j^2 / g_j - sum_{i != j} b_i^2 / g_i) / s^2``.
    """
    sig, field = basis.sig, basis.field
    ss = square(s, sig)
    if field.is_zero(ss):
        raise ValueError(f"{s!r} is isotropic or zero; it defines no reflection")
    b = [scalar_product(s, w, sig) for w in basis]
    g = basis.squares
    weights = [bi * bi / gi for bi, gi in zip(b, g)]
    total = sum(weights)
    n = basis.n
    rows = []
    for l in range(n):
        row = []
        for j in range(n):
            if l == j:
                row.append(-(weights[j] - (total - weights[j])) / ss)
            else:
                row.append(-2 * b[j] * b[l] / (ss * g[l]))
        rows.append(tuple(row))
    return tuple(rows)


def grade_lower_bound(reflectors: Sequence[Vector] | ReflectionSequence, sig=None, field=None) -> int:
    """Grade of ``r_1 r_2 ... r_m``; no factorization of the same map is shorter."""
    if isinstance(reflectors, ReflectionSequence):
        sig, field = reflectors.sig, reflectors.source.field
        reflectors = reflectors.reflectors
    if not reflectors:
        return 0
    prod = product_of_vectors(reflectors, sig, field)
    if prod.is_zero():
        raise InvariantError("product of invertible vectors vanished")
    return grade(prod)


@dataclass(frozen=True)
class KernelInfo:
    dim: int
    nondegenerate: Optional[bool]  # None: undecidable within float tolerance
    perp_dim: int
    basis: tuple[Vector, ...]


def kernel_analysis(m: OrthogonalMap) -> KernelInfo:
    """Fixed space ``Ker(T - I)`` and whether the form restricted to it is non-degenerate."""
    field = m.field
    n = m.n
    shifted = linalg.sub(m.matrix, linalg.identity(n, field))
    coords = linalg.nullspace(shifted, field)
    vectors = tuple(m.basis.combine(c) for c in coords)
    k = len(vectors)
    if k == 0:
        nondeg = True
    else:
        d = linalg.det(gram_matrix(vectors, m.sig), field)
        nondeg = None if not field.exact and field.is_zero(d) else not field.is_zero(d)
    return KernelInfo(k, nondeg, n - k, vectors)


@dataclass(frozen=True)
class DecompositionReport:
    sequence: ReflectionSequence
    householder_matrices: tuple[Matrix, ...]
    recomposition_ok: bool
    grade_lower_bound: int
    achieved_count: int
    kernel_dim: int
    kernel_nondegenerate: Optional[bool]
    minimality_certified: bool
    warnings: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.sequence.source.n


def build_report(m: OrthogonalMap) -> DecompositionReport:
    seq = decompose(m)
    field = m.field
    recomposed = recompose(seq)
    ok = linalg.equal(recomposed, m.matrix, field)
    mats = tuple(householder_matrix(s, m.basis) for s in seq.reflectors)
    if not linalg.equal(linalg.matprod(mats, m.n, field), m.matrix, field):
        raise InvariantError("product of Householder matrices differs from the input")
    t = grade_lower_bound(seq)
    count = len(seq)
    if not t <= count <= m.n:
        raise InvariantError(f"bound {t}, count {count}, dimension {m.n} out of order")
    kern = kernel_analysis(m)
    certified = t == count or (kern.nondegenerate is True and count == kern.perp_dim)
    warnings = []
    if kern.nondegenerate is None:
        warnings.append("kernel non-degeneracy undetermined within tolerance")
    elif kern.nondegenerate is False:
        warnings.append("Ker(T - I) is degenerate; only the grade bound applies")
    if not certified:
        warnings.append(f"bound {t}, achieved {count}; minimality not certified")
    if seq.rebased:
        warnings.append(f"pivot frame rebuilt {seq.rebased} time(s)")
    return DecompositionReport(
        sequence=seq,
        householder_matrices=mats,
        recomposition_ok=ok,
        grade_lower_bound=t,
        achieved_count=count,
        kernel_dim=kern.dim,
        kernel_nondegenerate=kern.nondegenerate,
        minimality_certified=certified,
        warnings=tuple(warnings),
    )
