"""The universal Clifford algebra R_{p,q} on 2^n blades, stored sparsely.

A blade is an ``int`` bitmask: bit ``i`` set means the factor e_{i+1} is
present, factors ordered by increasing index. Mask 0 is the scalar 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .scalar import EXACT, Field
from .space import Signature, Vector, is_invertible_vector, square


class NotAVectorError(ValueError):
    """A multivector expected to be grade 1 carried other grades."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the factors of ``e_a e_b`` into increasing order.

    Each factor of ``b`` has to move past every factor of ``a`` with a higher
    index.
    """
    swaps = 0
    a >>= 1
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """``e_a e_b = sign * e_{a ^ b}``; returns ``(sign, a ^ b)``."""
    sign = reorder_sign(a, b)
    common = a & b
    # e_i^2 = -1 for the last q indices
    neg_mask = ((1 << sig.q) - 1) << sig.p
    if popcount(common & neg_mask) & 1:
        sign = -sign
    return sign, a ^ b


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


class Multivector:
    """Sparse ``{blade: coefficient}`` element of R_{p,q}.

    Coefficients that the field considers zero are dropped on construction,
    so the empty mapping is the zero multivector.
    """

    __slots__ = ("terms", "sig", "field")

    def __init__(self, terms: Mapping[int, object], sig: Signature, field: Field = EXACT):
        limit = 1 << sig.n
        clean = {}
        for mask, c in terms.items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade {mask:#b} does not fit {sig}")
            if not field.is_zero(c):
                clean[mask] = c
        self.terms = clean
        self.sig = sig
        self.field = field

    @classmethod
    def scalar(cls, value, sig: Signature, field: Field = EXACT) -> Multivector:
        return cls({0: field.coerce(value)}, sig, field)

    @classmethod
    def from_vector(cls, v: Vector, sig: Signature, field: Field = EXACT) -> Multivector:
        if len(v) != sig.n:
            raise ValueError(f"vector of length {len(v)} in {sig}")
        return cls({1 << i: c for i, c in enumerate(v)}, sig, field)

    @classmethod
    def blade(cls, indices: Iterable[int], sig: Signature, field: Field = EXACT) -> Multivector:
        """Product ``e_{i1} e_{i2} ...`` of 0-based generator indices, in the order given."""
        out = cls.scalar(1, sig, field)
        for i in indices:
            out = out * cls({1 << i: field.coerce(1)}, sig, field)
        return out

    def _same_algebra(self, other: Multivector):
        if self.sig != other.sig:
            raise ValueError(f"multivectors from different algebras: {self.sig} vs {other.sig}")

    def __add__(self, other: Multivector) -> Multivector:
        self._same_algebra(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(out, self.sig, self.field)

    def __neg__(self) -> Multivector:
        return Multivector({m: -c for m, c in self.terms.items()}, self.sig, self.field)

    def __sub__(self, other: Multivector) -> Multivector:
        return self + (-other)

    def scale(self, k) -> Multivector:
        return Multivector({m: k * c for m, c in self.terms.items()}, self.sig, self.field)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return self.scale(other)

    def __rmul__(self, k):
        return self.scale(k)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.sig != other.sig:
            return False
        return not (self - other).terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, mask: int):
        return self.terms.get(mask, self.field.coerce(0))

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self) -> set[int]:
        return {popcount(m) for m in self.terms}

    def to_vector(self) -> Vector:
        stray = [m for m in self.terms if popcount(m) != 1]
        if stray:
            raise NotAVectorError(f"non-vector blades present: {', '.join(blade_name(m) for m in sorted(stray))}")
        zero = self.field.coerce(0)
        return Vector._raw(tuple(self.terms.get(1 << i, zero) for i in range(self.sig.n)))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*{blade_name(m)}" for m, c in sorted(self.terms.items(), key=lambda t: (popcount(t[0]), t[0]))]
        return " + ".join(parts)


def geometric_product(*factors: Multivector) -> Multivector:
    """Left-to-right product of one or more multivectors."""
    if not factors:
        raise ValueError("geometric_product needs at least one factor")
    return reduce(_gp2, factors)


def _gp2(a: Multivector, b: Multivector) -> Multivector:
    a._same_algebra(b)
    sig = a.sig
    out: dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = blade_product(ma, mb, sig)
            term = ca * cb
            out[m] = out.get(m, 0) + (term if sign > 0 else -term)
    return Multivector(out, sig, a.field)


def grade(a: Multivector) -> int:
    if a.is_zero():
        raise ValueError("the zero multivector has no grade")
    return max(a.grades())


def grade_part(a: Multivector, r: int) -> Multivector:
    if not 0 <= r <= a.sig.n:
        raise ValueError(f"grade {r} outside 0..{a.sig.n}")
    return Multivector({m: c for m, c in a.terms.items() if popcount(m) == r}, a.sig, a.field)


def vector_inverse(s: Vector, sig: Signature, field: Field = EXACT) -> Multivector:
    """``s^{-1} = s / s^2`` as a multivector."""
    if not is_invertible_vector(s, sig, field):
        raise ValueError(f"{s!r} is zero or isotropic and has no inverse")
    return Multivector.from_vector(s / square(s, sig), sig, field)


def reflect(s: Vector, x: Vector, sig: Signature, field: Field = EXACT) -> Vector:
    """Reflection in the hyperplane orthogonal to ``s``, as ``-s x s^{-1}``."""
    sm = Multivector.from_vector(s, sig, field)
    xm = Multivector.from_vector(x, sig, field)
    return (-(sm * xm * vector_inverse(s, sig, field))).to_vector()


@dataclass(frozen=True)
class Versor:
    """Product of invertible vectors ``s_1 s_2 ... s_k``."""

    factors: tuple[Vector, ...]
    sig: Signature
    field: Field = EXACT
    product: Multivector = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        for s in factors:
            if not is_invertible_vector(s, self.sig, self.field):
                raise ValueError(f"versor factor {s!r} is not invertible")
        object.__setattr__(self, "product", product_of_vectors(factors, self.sig, self.field))

    @property
    def parity(self) -> int:
        return len(self.factors) % 2

    def inverse(self) -> Multivector:
        """``s_k^{-1} ... s_1^{-1}``."""
        out = Multivector.scalar(1, self.sig, self.field)
        for s in reversed(self.factors):
            out = out * vector_inverse(s, self.sig, self.field)
        return out


def apply_versor(v: Versor, x: Vector) -> Vector:
    """``(-1)^k S x S^{-1}``: the composition of the factor reflections, s_1 outermost."""
    xm = Multivector.from_vector(x, v.sig, v.field)
    out = v.product * xm * v.inverse()
    if v.parity:
        out = -out
    return out.to_vector()


def versors_proportional(u: Versor, v: Versor):
    """``(True, lam)`` when ``u.product == lam * v.product``, else ``(False, None)``."""
    a, b = u.product, v.product
    if a.is_zero() or b.is_zero():
        raise ValueError("zero versor product")
    if a.terms.keys() != b.terms.keys():
        return False, None
    mask = next(iter(b.terms))
    lam = a.terms[mask] / b.terms[mask]
    if a == b.scale(lam):
        return True, lam
    return False, None


def product_of_vectors(vectors: Sequence[Vector], sig: Signature, field: Field = EXACT) -> Multivector:
    """Geometric product of plain vectors; the empty product is 1."""
    out = Multivector.scalar(1, sig, field)
    for s in vectors:
        out = out * Multivector.from_vector(s, sig, field)
    return out
