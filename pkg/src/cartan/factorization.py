"""Factor an orthogonal map of R^{p,q} into at most p + q hyperplane reflections.

The driver fixes one basis vector per step. At the current map ``M`` and a
non-isotropic basis vector ``w`` there are three cases:

* ``M(w) = w``: nothing to do;
* ``c = M(w) - w`` invertible: reflecting in ``c`` sends ``M(w)`` to ``w``;
* ``c`` isotropic: ``d = M(w) + w`` is then invertible and ``phi_w phi_d``
  sends ``M(w)`` to ``w``.

Pivot search prefers basis vectors in the first two cases, so each costs at
most one reflection. When every remaining basis vector falls in the third
case the two-reflection step is taken, provided ``det M = (-1)^r`` on the
``r`` remaining dimensions, which forces the rest to finish in ``r - 2``
reflections by parity. Otherwise a non-basis pivot exists in the remaining
subspace and the working frame is rebuilt around it.

All maps are kept internally as matrices in canonical coordinates.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from . import linalg
from .linalg import Matrix
from .scalar import Field
from .space import (
    OrthogonalBasis,
    Signature,
    Vector,
    is_invertible_vector,
    orthogonal_span,
    scalar_product,
    square,
)


class NotOrthogonalError(ValueError):
    def __init__(self, defect, where):
        self.defect = defect
        self.where = where
        super().__init__(f"matrix is not orthogonal: max |Q^T A Q - A| = {defect} at entry {where}")


class InvariantError(RuntimeError):
    """An internal guarantee of the algorithm failed."""


@dataclass(frozen=True)
class OrthogonalMap:
    """An isometry given by its matrix in ``basis`` (column j is the image of w_j)."""

    matrix: Matrix
    basis: OrthogonalBasis
    check: bool = dc_field(default=True, repr=False, compare=False)

    def __post_init__(self):
        f = self.basis.field
        m = linalg.as_matrix(self.matrix, f)
        object.__setattr__(self, "matrix", m)
        n = self.basis.n
        if linalg.shape(m) != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {linalg.shape(m)}")
        if self.check:
            g = self.basis.gram
            mtgm = linalg.matmul(linalg.matmul(linalg.transpose(m), g), m)
            defect, where = linalg.max_abs_diff(mtgm, g)
            if not f.is_zero(defect):
                raise NotOrthogonalError(defect, where)

    @property
    def sig(self) -> Signature:
        return self.basis.sig

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def n(self) -> int:
        return self.basis.n

    def canonical(self) -> Matrix:
        if self.basis.is_canonical:
            return self.matrix
        w = self.basis.to_canonical()
        return linalg.matmul(linalg.matmul(w, self.matrix), self.basis.from_canonical())

    @classmethod
    def from_canonical(cls, matrix: Matrix, basis: OrthogonalBasis, check: bool = True) -> OrthogonalMap:
        m = linalg.as_matrix(matrix, basis.field)
        if basis.is_canonical:
            return cls(m, basis, check)
        inner = linalg.matmul(linalg.matmul(basis.from_canonical(), m), basis.to_canonical())
        return cls(inner, basis, check)

    def __call__(self, x: Vector) -> Vector:
        return Vector._raw(linalg.matvec(self.canonical(), x.coords))


class StepKind(enum.Enum):
    IDENTITY = "identity"
    SINGLE = "single"
    PAIR = "pair"


@dataclass(frozen=True)
class ReflectionStep:
    """One pivot of the driver.

    ``vectors`` holds ``(c,)`` for SINGLE and ``(w, d)`` for PAIR, the pair
    acting as ``phi_w o phi_d``. ``pivot_index`` is None when the pivot came
    from a rebuilt frame rather than the input basis.
    """

    kind: StepKind
    pivot: Vector
    pivot_index: Optional[int]
    vectors: tuple[Vector, ...] = ()

    @property
    def reflectors(self) -> tuple[Vector, ...]:
        """Reflections in the order they act on the current map.

        Read outermost-first, the same tuple composes the inverse of the
        step, which is what gets emitted into the factorization.
        """
        if self.kind is StepKind.PAIR:
            w, d = self.vectors
            return (d, w)
        return self.vectors


@dataclass(frozen=True)
class ReflectionSequence:
    """``source`` equals ``phi_{r_1} o phi_{r_2} o ... o phi_{r_m}``."""

    reflectors: tuple[Vector, ...]
    source: OrthogonalMap
    steps: tuple[ReflectionStep, ...] = ()
    artinian_branches: int = 0
    rebased: int = 0
    trace: tuple[Matrix, ...] = dc_field(default=(), repr=False)
    artinian_diagnostics: tuple[tuple[int, object], ...] = ()

    def __len__(self):
        return len(self.reflectors)

    @property
    def sig(self) -> Signature:
        return self.source.sig


def _apply(c: Matrix, x: Vector) -> Vector:
    return Vector._raw(linalg.matvec(c, x.coords))


def _reflect_map(s: Vector, c: Matrix, sig: Signature, field: Field) -> Matrix:
    """``phi_s o c``, reflecting every column of ``c``."""
    ms = tuple(g * a for g, a in zip(sig.metric, s.coords))
    ss = sum(a * b for a, b in zip(ms, s.coords))
    if field.is_zero(ss):
        raise ValueError(f"cannot reflect in the isotropic or zero vector {s!r}")
    scale = 2 / ss
    cols = []
    for col in zip(*c):
        k = scale * sum(a * b for a, b in zip(ms, col))
        cols.append(tuple(x - k * y for x, y in zip(col, s.coords)) if k else col)
    return tuple(zip(*cols))


def _step(c: Matrix, w: Vector, index, sig: Signature, field: Field) -> ReflectionStep:
    if not is_invertible_vector(w, sig, field):
        raise ValueError(f"pivot {w!r} is zero or isotropic")
    image = _apply(c, w)
    diff = image - w
    if diff.is_zero(field):
        return ReflectionStep(StepKind.IDENTITY, w, index)
    if is_invertible_vector(diff, sig, field):
        return ReflectionStep(StepKind.SINGLE, w, index, (diff,))
    d = image + w
    if not is_invertible_vector(d, sig, field):
        raise InvariantError(f"both M(w) - w and M(w) + w are isotropic at {w!r}")
    return ReflectionStep(StepKind.PAIR, w, index, (w, d))


def _apply_step(step: ReflectionStep, c: Matrix, sig: Signature, field: Field) -> Matrix:
    for s in step.reflectors:
        c = _reflect_map(s, c, sig, field)
    return c


def _is_pivot(c: Matrix, w: Vector, sig: Signature, field: Field) -> bool:
    diff = _apply(c, w) - w
    return diff.is_zero(field) or not field.is_zero(square(diff, sig))


def step_reflector(m: OrthogonalMap, w: Vector, index: Optional[int] = None) -> ReflectionStep:
    """The reflections that make ``m`` fix ``w``, by the three-case rule."""
    return _step(m.canonical(), w, index, m.sig, m.field)


def find_pivot(m: OrthogonalMap, remaining: Iterable[int]) -> Optional[int]:
    """Smallest index j with ``m(w_j) = w_j`` or ``(m(w_j) - w_j)^2 != 0``."""
    c = m.canonical()
    for j in sorted(remaining):
        if _is_pivot(c, m.basis[j], m.sig, m.field):
            return j
    return None


def detect_artinian(m: OrthogonalMap, remaining: Iterable[int]) -> bool:
    """True when no remaining basis vector is a pivot: every ``m(w_j) - w_j`` is nonzero isotropic."""
    return find_pivot(m, remaining) is None


def _grid(k: int, radius: int = 2):
    vals = range(-radius, radius + 1)
    for combo in itertools.product(vals, repeat=k):
        if any(combo):
            yield combo


def _combine(coeffs, vectors: Sequence[Vector]) -> Vector:
    out = vectors[0] * coeffs[0]
    for a, v in zip(coeffs[1:], vectors[1:]):
        out = out + v * a
    return out


def _search_pivot(c: Matrix, frame: Sequence[Vector], sig: Signature, field: Field) -> Vector:
    """An invertible x in span(frame) that the map fixes or moves by an invertible vector.

    ``x^2 (M x - x)^2`` has degree at most 4 in each coefficient, so a
    5-point grid per coefficient cannot miss it when it is not identically
    zero. The fixed space is searched first since a fixed pivot is free.
    """
    n = sig.n
    vmat = linalg.from_columns([v.coords for v in frame])
    moved = linalg.matmul(linalg.sub(c, linalg.identity(n, field)), vmat)
    kernel = [_combine(k, frame) for k in linalg.nullspace(moved, field)]
    if kernel:
        for coeffs in _grid(len(kernel)):
            x = _combine(coeffs, kernel)
            if is_invertible_vector(x, sig, field):
                return x
    for coeffs in _grid(len(frame)):
        x = _combine(coeffs, frame)
        if is_invertible_vector(x, sig, field) and _is_pivot(c, x, sig, field):
            return x
    raise InvariantError("no pivot in the remaining subspace although the determinant rules out the Artinian case")


def _rebuild_frame(x: Vector, frame: Sequence[Vector], sig: Signature, field: Field) -> list[Vector]:
    xx = square(x, sig)
    projected = [v - x * (scalar_product(v, x, sig) / xx) for v in frame]
    rest = orthogonal_span(projected, sig, field)
    if len(rest) != len(frame) - 1:
        raise InvariantError("rebuilt frame has the wrong dimension")
    return [x, *rest]


def _check_final(c: Matrix, count: int, bound: int, m: OrthogonalMap):
    if count > bound:
        raise InvariantError(f"{count} reflections exceed the bound {bound}")
    if not linalg.equal(c, linalg.identity(m.n, m.field), m.field):
        raise InvariantError("residual map is not the identity")


def decompose(m: OrthogonalMap) -> ReflectionSequence:
    """At most ``n`` reflectors whose composition is ``m``."""
    sig, field = m.sig, m.field
    c = m.canonical()
    remaining: list[tuple[Optional[int], Vector]] = list(enumerate(m.basis.vectors))
    steps, trace, diagnostics = [], [], []
    artinian = rebased = 0
    while remaining:
        pos = next(
            (i for i, (_, w) in enumerate(remaining) if _is_pivot(c, w, sig, field)),
            None,
        )
        if pos is None:
            r = len(remaining)
            d = linalg.det(c, field)
            diagnostics.append((r, d))
            if field.eq(d, (-1) ** r):
                artinian += 1
                pos = 0
            else:
                frame = [w for _, w in remaining]
                x = _search_pivot(c, frame, sig, field)
                remaining = [(None, v) for v in _rebuild_frame(x, frame, sig, field)]
                rebased += 1
                pos = 0
        index, w = remaining.pop(pos)
        step = _step(c, w, index, sig, field)
        c = _apply_step(step, c, sig, field)
        steps.append(step)
        trace.append(c)
    reflectors = tuple(r for s in steps for r in s.reflectors)
    _check_final(c, len(reflectors), m.n, m)
    return ReflectionSequence(reflectors, m, tuple(steps), artinian, rebased, tuple(trace), tuple(diagnostics))


def decompose_weak(m: OrthogonalMap) -> ReflectionSequence:
    """Basis vectors in their given order, no pivot search; at most ``2n`` reflectors."""
    sig, field = m.sig, m.field
    c = m.canonical()
    steps, trace = [], []
    for index, w in enumerate(m.basis.vectors):
        step = _step(c, w, index, sig, field)
        c = _apply_step(step, c, sig, field)
        steps.append(step)
        trace.append(c)
    reflectors = tuple(r for s in steps for r in s.reflectors)
    pairs = sum(s.kind is StepKind.PAIR for s in steps)
    _check_final(c, len(reflectors), 2 * m.n, m)
    return ReflectionSequence(reflectors, m, tuple(steps), pairs, 0, tuple(trace))


def compose_reflections(reflectors: Sequence[Vector], sig: Signature, field: Field) -> Matrix:
    """Canonical matrix of ``phi_{r_1} o ... o phi_{r_m}``."""
    c = linalg.identity(sig.n, field)
    for s in reversed(reflectors):
        c = _reflect_map(s, c, sig, field)
    return c


def recompose(seq: ReflectionSequence) -> Matrix:
    """Matrix of the composed reflections in the source basis."""
    src = seq.source
    for s in seq.reflectors:
        if not is_invertible_vector(s, src.sig, src.field):
            raise ValueError(f"reflector {s!r} is not invertible")
    canon = compose_reflections(seq.reflectors, src.sig, src.field)
    return OrthogonalMap.from_canonical(canon, src.basis, check=False).matrix
