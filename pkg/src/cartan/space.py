"""The space R^{p,q}: signature, vectors, bases, and the diagonal form.

The first ``p`` canonical basis vectors square to +1 and the last ``q`` to -1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import linalg
from .linalg import Matrix
from .scalar import EXACT, Field


class DimensionError(ValueError):
    pass


class DependentBasisError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"negative signature ({self.p}, {self.q})")
        if self.p + self.q < 1:
            raise ValueError("signature must have p + q >= 1")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def metric(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    def gram(self, field: Field = EXACT) -> Matrix:
        return linalg.diag(self.metric, field)

    def __str__(self):
        return f"R^{{{self.p},{self.q}}}"


@dataclass(frozen=True, init=False)
class Vector:
    """Coordinates against the canonical basis of the ambient space."""

    coords: tuple

    def __init__(self, coords: Iterable, field: Field = EXACT):
        object.__setattr__(self, "coords", tuple(field.coerce(c) for c in coords))

    @classmethod
    def _raw(cls, coords: tuple) -> Vector:
        v = object.__new__(cls)
        object.__setattr__(v, "coords", coords)
        return v

    @classmethod
    def basis(cls, n: int, i: int, field: Field = EXACT) -> Vector:
        """The canonical basis vector e_{i+1} (0-based index)."""
        return cls((1 if j == i else 0 for j in range(n)), field)

    @classmethod
    def zero(cls, n: int, field: Field = EXACT) -> Vector:
        return cls((0,) * n, field)

    def __len__(self):
        return len(self.coords)

    def __iter__(self) -> Iterator:
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: Vector) -> Vector:
        _check_len(self, other)
        return Vector._raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Vector) -> Vector:
        _check_len(self, other)
        return Vector._raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Vector:
        return Vector._raw(tuple(-a for a in self.coords))

    def __mul__(self, k) -> Vector:
        return Vector._raw(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k) -> Vector:
        return Vector._raw(tuple(a / k for a in self.coords))

    def is_zero(self, field: Field = EXACT) -> bool:
        return all(field.is_zero(c) for c in self.coords)

    def close_to(self, other: Vector, field: Field = EXACT) -> bool:
        return len(self) == len(other) and all(field.eq(a, b) for a, b in zip(self, other))

    def __repr__(self):
        return f"Vector({[str(c) for c in self.coords]})"


def _check_len(x: Vector, y: Vector):
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} vs {len(y)}")


def _check_sig(x: Vector, sig: Signature):
    if len(x) != sig.n:
        raise DimensionError(f"vector of length {len(x)} in {sig}")


def scalar_product(x: Vector, y: Vector, sig: Signature):
    _check_sig(x, sig)
    _check_sig(y, sig)
    c = x.coords
    d = y.coords
    pos = sum(c[i] * d[i] for i in range(sig.p))
    neg = sum(c[i] * d[i] for i in range(sig.p, sig.n))
    return pos - neg


def square(x: Vector, sig: Signature):
    return scalar_product(x, x, sig)


class VectorKind(enum.Enum):
    ZERO = "zero"
    ISOTROPIC = "isotropic"
    INVERTIBLE = "invertible"


def classify(x: Vector, sig: Signature, field: Field = EXACT) -> VectorKind:
    if x.is_zero(field):
        return VectorKind.ZERO
    if field.is_zero(square(x, sig)):
        return VectorKind.ISOTROPIC
    return VectorKind.INVERTIBLE


def is_isotropic(x: Vector, sig: Signature, field: Field = EXACT) -> bool:
    """True when ``x^2 = 0``.

    The zero vector also answers True; use :func:`classify` to tell it apart
    from a genuine null direction.
    """
    return classify(x, sig, field) is not VectorKind.INVERTIBLE


def is_invertible_vector(x: Vector, sig: Signature, field: Field = EXACT) -> bool:
    return classify(x, sig, field) is VectorKind.INVERTIBLE


def reflect_formula(s: Vector, x: Vector, sig: Signature, field: Field = EXACT) -> Vector:
    """Hyperplane reflection ``x - 2 B(x, s) / s^2 * s``."""
    ss = square(s, sig)
    if field.is_zero(ss):
        raise ValueError(f"cannot reflect in the isotropic or zero vector {s!r}")
    return x - s * (2 * scalar_product(x, s, sig) / ss)


@dataclass(frozen=True)
class Basis:
    """An ordered basis, vectors in canonical coordinates."""

    vectors: tuple[Vector, ...]
    sig: Signature
    field: Field = EXACT
    gram: Matrix = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = tuple(v if isinstance(v, Vector) else Vector(v, self.field) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if len(vecs) != self.sig.n:
            raise DimensionError(f"{len(vecs)} vectors for a basis of {self.sig}")
        for v in vecs:
            _check_sig(v, self.sig)
        if linalg.rank(tuple(v.coords for v in vecs), self.field) != self.sig.n:
            raise DependentBasisError("basis vectors are linearly dependent")
        object.__setattr__(self, "gram", gram_matrix(vecs, self.sig))

    @classmethod
    def canonical(cls, sig: Signature, field: Field = EXACT):
        return cls(tuple(Vector.basis(sig.n, i, field) for i in range(sig.n)), sig, field)

    @property
    def n(self) -> int:
        return self.sig.n

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i) -> Vector:
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)

    @cached_property
    def is_canonical(self) -> bool:
        n = self.n
        return all(v.coords[i] == (1 if i == j else 0) for j, v in enumerate(self.vectors) for i in range(n))

    def to_canonical(self) -> Matrix:
        """Change-of-basis matrix; column j holds the canonical coordinates of w_j."""
        return linalg.from_columns([v.coords for v in self.vectors])

    def combine(self, coeffs: Sequence) -> Vector:
        """The vector ``sum_j coeffs[j] * w_j``."""
        out = Vector.zero(self.n, self.field)
        for c, v in zip(coeffs, self.vectors):
            out = out + v * c
        return out


class OrthogonalBasis(Basis):
    """A basis with diagonal Gram matrix and no isotropic members."""

    def __post_init__(self):
        super().__post_init__()
        g = self.gram
        f = self.field
        for i in range(self.n):
            if f.is_zero(g[i][i]):
                raise ValueError(f"basis vector {i} is isotropic")
            for j in range(self.n):
                if i != j and not f.is_zero(g[i][j]):
                    raise ValueError(f"basis vectors {i} and {j} are not orthogonal")

    @property
    def squares(self) -> tuple:
        return tuple(self.gram[i][i] for i in range(self.n))

    def coordinates(self, x: Vector) -> tuple:
        """Coordinates of ``x`` in this basis, ``B(x, w_j) / w_j^2``."""
        return tuple(scalar_product(x, w, self.sig) / g for w, g in zip(self.vectors, self.squares))

    def from_canonical(self) -> Matrix:
        """Inverse of :meth:`to_canonical`, read off from the diagonal form."""
        return tuple(
            tuple(m * c / g for m, c in zip(self.sig.metric, w.coords))
            for w, g in zip(self.vectors, self.squares)
        )


def gram_matrix(basis: Sequence[Vector] | Basis, sig: Signature) -> Matrix:
    vecs = list(basis)
    return tuple(tuple(scalar_product(a, b, sig) for b in vecs) for a in vecs)


def _residual(v: Vector, found: list[Vector], squares: list, sig: Signature) -> Vector:
    for o, oo in zip(found, squares):
        v = v - o * (scalar_product(v, o, sig) / oo)
    return v


def orthogonal_span(vectors: Sequence[Vector], sig: Signature, field: Field = EXACT) -> list[Vector]:
    """Orthogonal, non-isotropic basis for the span of ``vectors``.

    Vectors are processed in order and those dependent on earlier ones are
    dropped. A nonzero isotropic residual ``r`` is repaired by adding
    ``lam * u`` where ``u`` is the residual of the first later vector with
    ``B(r, u) != 0`` and ``lam`` is 1, or 2 if 1 makes the sum isotropic.
    Raises ValueError when the span is degenerate and no repair exists.
    """
    pending = list(vectors)
    found: list[Vector] = []
    squares: list = []
    i = 0
    while i < len(pending):
        r = _residual(pending[i], found, squares, sig)
        i += 1
        if r.is_zero(field):
            continue
        rr = square(r, sig)
        if field.is_zero(rr):
            for later in pending[i:]:
                u = _residual(later, found, squares, sig)
                b = scalar_product(r, u, sig)
                if not field.is_zero(b):
                    break
            else:
                raise ValueError("span is degenerate: an isotropic residual is orthogonal to everything left")
            for lam in (1, 2):
                cand = r + u * lam
                if not field.is_zero(square(cand, sig)):
                    r = cand
                    break
            rr = square(r, sig)
        found.append(r)
        squares.append(rr)
    return found


def orthogonalize(basis: Basis) -> OrthogonalBasis:
    out = orthogonal_span(basis.vectors, basis.sig, basis.field)
    if len(out) != basis.n:
        raise DependentBasisError("input vectors are dependent")
    return OrthogonalBasis(tuple(out), basis.sig, basis.field)


def is_orthogonal_map(q: Matrix, sig: Signature, field: Field = EXACT) -> bool:
    """Whether ``Q^T A Q = A`` with ``A = diag(1..1, -1..-1)``."""
    defect = orthogonality_defect(q, sig, field)
    return defect is not None and field.is_zero(defect[0])


def orthogonality_defect(q: Matrix, sig: Signature, field: Field = EXACT):
    """``(max |Q^T A Q - A|, (row, col))``, or None for a wrongly shaped ``Q``."""
    if linalg.shape(q) != (sig.n, sig.n):
        return None
    a = sig.gram(field)
    qtaq = linalg.matmul(linalg.matmul(linalg.transpose(q), a), q)
    return linalg.max_abs_diff(qtaq, a)
