"""Dense matrix helpers over a :class:`~cartan.scalar.Field`.

Matrices are tuples of row tuples. Elimination works for both fields: exact
mode pivots on the first nonzero entry, float mode on the largest one.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import EXACT, Field

Matrix = tuple[tuple, ...]


def as_matrix(rows: Sequence[Sequence], field: Field = EXACT) -> Matrix:
    rows = [tuple(field.coerce(x) for x in row) for row in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return tuple(rows)


def identity(n: int, field: Field = EXACT) -> Matrix:
    one, zero = field.coerce(1), field.coerce(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diag(entries: Sequence, field: Field = EXACT) -> Matrix:
    n = len(entries)
    zero = field.coerce(0)
    return tuple(tuple(field.coerce(entries[i]) if i == j else zero for j in range(n)) for i in range(n))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    cols = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matprod(mats: Sequence[Matrix], n: int, field: Field = EXACT) -> Matrix:
    out = identity(n, field)
    for m in mats:
        out = matmul(out, m)
    return out


def matvec(a: Matrix, x: Sequence) -> tuple:
    return tuple(sum(r * v for r, v in zip(row, x)) for row in a)


def column(a: Matrix, j: int) -> tuple:
    return tuple(row[j] for row in a)


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*cols))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def max_abs_diff(a: Matrix, b: Matrix):
    """Largest ``|a_ij - b_ij|`` and its position."""
    best, where = 0, (0, 0)
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            d = abs(x - y)
            if d > best:
                best, where = d, (i, j)
    return best, where


def equal(a: Matrix, b: Matrix, field: Field = EXACT) -> bool:
    if shape(a) != shape(b):
        return False
    return all(field.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _pick_pivot(m, col, start, field):
    if field.exact:
        for i in range(start, len(m)):
            if m[i][col] != 0:
                return i
        return None
    best = max(range(start, len(m)), key=lambda i: abs(m[i][col]), default=None)
    if best is None or field.is_zero(m[best][col]):
        return None
    return best


def row_reduce(a: Matrix, field: Field = EXACT) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in a]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = _pick_pivot(m, c, r, field)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix, field: Field = EXACT) -> int:
    return len(row_reduce(a, field)[1])


def nullspace(a: Matrix, field: Field = EXACT) -> list[tuple]:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    rref, pivots = row_reduce(a, field)
    cols = shape(a)[1]
    free = [c for c in range(cols) if c not in pivots]
    zero, one = field.coerce(0), field.coerce(1)
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][f]
        basis.append(tuple(v))
    return basis


def det(a: Matrix, field: Field = EXACT):
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    w = [list(r) for r in a]
    out = field.coerce(1)
    for c in range(n):
        p = _pick_pivot(w, c, c, field)
        if p is None:
            return field.coerce(0)
        if p != c:
            w[c], w[p] = w[p], w[c]
            out = -out
        out *= w[c][c]
        for i in range(c + 1, n):
            f = w[i][c] / w[c][c]
            if f:
                w[i] = [x - f * y for x, y in zip(w[i], w[c])]
    return out


def inverse(a: Matrix, field: Field = EXACT) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    aug = tuple(tuple(row) + tuple(e) for row, e in zip(a, identity(n, field)))
    rref, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rref)
