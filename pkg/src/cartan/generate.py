"""Seeded random test maps and the exhaustive search for Artinian maps."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from gmpy2 import mpq

from .factorization import OrthogonalMap, compose_reflections, detect_artinian
from .linalg import Matrix
from .scalar import EXACT, Field
from .space import OrthogonalBasis, Signature, Vector, is_invertible_vector

MAX_DRAWS = 64


class GenerationError(RuntimeError):
    pass


def random_invertible_vector(
    rng: random.Random, sig: Signature, field: Field = EXACT, max_draws: int = MAX_DRAWS
) -> Vector:
    """Coordinates ``a/b`` with ``|a| <= 3`` and ``b`` in 1..3; isotropic draws are redrawn."""
    for _ in range(max_draws):
        coords = [mpq(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(sig.n)]
        v = Vector._raw(tuple(field.coerce(c) for c in coords))
        if is_invertible_vector(v, sig, field):
            return v
    raise GenerationError(f"no invertible vector in {max_draws} draws for {sig}")


def random_reflectors(rng: random.Random, sig: Signature, k: int, field: Field = EXACT) -> tuple[Vector, ...]:
    return tuple(random_invertible_vector(rng, sig, field) for _ in range(k))


def random_case(rng: random.Random, sig: Signature, max_reflections: int, field: Field = EXACT):
    """``(reflectors, canonical matrix)`` of a product of at most ``max_reflections`` reflections."""
    k = rng.randint(0, max_reflections)
    refl = random_reflectors(rng, sig, k, field)
    return refl, compose_reflections(refl, sig, field)


def case_rng(seed: int, index: int) -> random.Random:
    """Independent stream per case, so any case can be rerun on its own."""
    return random.Random(f"{seed}:{index}")


def small_invertible_vectors(sig: Signature, field: Field = EXACT) -> list[Vector]:
    """Invertible vectors in {-1, 0, 1}^n, one per line through the origin."""
    out = []
    for coords in itertools.product((0, 1, -1), repeat=sig.n):
        nz = next((c for c in coords if c), 0)
        if nz <= 0:
            continue
        v = Vector._raw(tuple(field.coerce(c) for c in coords))
        if is_invertible_vector(v, sig, field):
            out.append(v)
    return out


def artinian_maps(sig: Signature, k: Optional[int] = None, field: Field = EXACT) -> Iterator[tuple[tuple[Vector, ...], Matrix]]:
    """Products of ``k`` small reflections that move every canonical basis vector isotropically.

    Enumeration is exhaustive and in a fixed order, so the first hit is
    reproducible. ``k`` defaults to ``n``.
    """
    k = sig.n if k is None else k
    pool = small_invertible_vectors(sig, field)
    basis = OrthogonalBasis.canonical(sig, field)
    everything = range(sig.n)
    for refl in itertools.product(pool, repeat=k):
        c = compose_reflections(refl, sig, field)
        if detect_artinian(OrthogonalMap(c, basis, check=False), everything):
            yield refl, c
