"""Seeded random instances: complexes, nested pairs, orthogonal link maps.

Validity is guaranteed by construction rather than rejection sampling:
differentials are drawn as anything composed with a projection onto the
annihilator of the previous range, and domains as random subspaces joined
with the image of the previous domain.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .complexes import FiniteComplex, full_complex
from .pairs import ComplexPair, LinkMaps
from .rational import (
    InnerProduct,
    Subspace,
    annihilator_rows,
    image_basis,
    invert,
    meet_join,
    mm,
    reye,
    rmat,
    rzeros,
    span,
    standard_inner_product,
    zero_subspace,
)


def _rand_entry(rng: random.Random, spread: int = 2) -> Fraction:
    return Fraction(rng.randint(-spread, spread))


def random_matrix(rng: random.Random, nrows: int, ncols: int, spread: int = 2) -> np.ndarray:
    out = rzeros(nrows, ncols)
    for i in range(nrows):
        for j in range(ncols):
            out[i, j] = _rand_entry(rng, spread)
    return out


def random_gram(rng: random.Random, dim: int) -> InnerProduct:
    """Exactly positive definite: MᵀM + I for a random integer M."""
    m = random_matrix(rng, dim, dim, 1)
    return InnerProduct(mm(m.T, m) + reye(dim))


def random_subspace(rng: random.Random, ambient_dim: int, max_dim: int | None = None) -> Subspace:
    k = rng.randint(0, ambient_dim if max_dim is None else max_dim)
    if k == 0:
        return zero_subspace(ambient_dim)
    return span(random_matrix(rng, ambient_dim, k))


def random_complex(
    rng: random.Random,
    degree: int,
    max_dim: int = 6,
    dims: list[int] | None = None,
    fancy_grams: bool = True,
) -> FiniteComplex:
    """Random full-domain complex with exact D∘D = 0.

    Each differential is a random matrix composed with the annihilator of the
    previous range, so it kills that range by construction.
    """
    if dims is None:
        dims = [rng.randint(0, max_dim) for _ in range(degree + 1)]
    grams = [
        random_gram(rng, d) if fancy_grams and rng.random() < 0.5 else standard_inner_product(d)
        for d in dims
    ]
    diffs = []
    prev_range = zero_subspace(dims[0])
    for i in range(degree):
        ann = annihilator_rows(prev_range)
        raw = random_matrix(rng, dims[i + 1], ann.shape[0])
        diff = mm(raw, ann)
        diffs.append(diff)
        prev_range = image_basis(diff)
    return full_complex(dims, grams, diffs)


def random_pair(
    rng: random.Random,
    degree: int,
    max_dim: int = 6,
    fancy_grams: bool = True,
) -> ComplexPair:
    """Random pair: random ambient complex plus constructively closed domains."""
    ambient = random_complex(rng, degree, max_dim, fancy_grams=fancy_grams)
    domains = []
    pushed = zero_subspace(ambient.dims[0])
    for i in range(degree + 1):
        extra = random_subspace(rng, ambient.dims[i])
        _, dom = meet_join(pushed, extra)
        domains.append(dom)
        if i < degree:
            pushed = image_basis(mm(ambient.diffs[i], dom.basis))
    return ComplexPair(ambient, tuple(domains))


def random_orthogonal(rng: random.Random, dim: int) -> np.ndarray:
    """Rational orthogonal matrix: Cayley transform of a random antisymmetric S."""
    s = random_matrix(rng, dim, dim)
    s = s - s.T
    eye = reye(dim)
    return mm(eye - s, invert(eye + s))


def random_orthogonal_links(rng: random.Random, dims: list[int]) -> LinkMaps:
    """Rational-orthogonal link maps for a complex with mirrored dimensions."""
    n = len(dims) - 1
    for i in range(n + 1):
        if dims[i] != dims[n - i]:
            raise ValueError("link maps need mirror-symmetric dimensions")
    maps = tuple(random_orthogonal(rng, dims[n - i]) for i in range(n + 1))
    constants = tuple(Fraction(rng.choice([1, 1, 2, -1])) for _ in range(n))
    return LinkMaps(maps, constants)


def random_mirrored_complex(rng: random.Random, degree: int, max_dim: int = 5) -> FiniteComplex:
    """Random full-domain complex whose dimension vector is a palindrome."""
    half = [rng.randint(0, max_dim) for _ in range((degree + 2) // 2)]
    dims = half + list(reversed(half[: (degree + 1) // 2]))
    return random_complex(rng, degree, max_dim, dims=dims, fancy_grams=False)
