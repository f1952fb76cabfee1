"""Finite-dimensional model of a Hilbert complex.

A complex 0 → H_0 → … → H_n → 0 of exact-rational inner product spaces.
Each differential is stored as a total matrix together with a declared
domain subspace; all semantics restrict to the domain.  Dropping density
(meaningless at finite dimension) is what lets a proper subspace domain
model a non-maximal closed extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rational import (
    InnerProduct,
    Subspace,
    full_subspace,
    image_basis,
    invert,
    is_direct_sum,
    is_zero,
    kernel_basis,
    meet_join,
    mm,
    orth,
    rzeros,
    span,
    standard_inner_product,
)


@dataclass(frozen=True)
class FiniteComplex:
    """Graded inner-product spaces with differentials on declared domains.

    ``diffs[i]`` maps H_i → H_{i+1}; ``domains[i]`` is 𝒟 of the i-th
    differential, with ``domains[n]`` the domain attached to the trailing
    zero map out of H_n (it matters for kernels in top degree).
    """

    dims: tuple[int, ...]
    grams: tuple[InnerProduct, ...]
    diffs: tuple[np.ndarray, ...]
    domains: tuple[Subspace, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __post_init__(self):
        n = self.degree
        if len(self.grams) != n + 1 or len(self.diffs) != n or len(self.domains) != n + 1:
            raise ValueError("inconsistent complex data lengths")
        for i, g in enumerate(self.grams):
            if g.dim != self.dims[i]:
                raise ValueError(f"gram dimension mismatch in degree {i}")
        for i, d in enumerate(self.diffs):
            if d.shape != (self.dims[i + 1], self.dims[i]):
                raise ValueError(f"differential shape mismatch in degree {i}")
        for i, v in enumerate(self.domains):
            if v.ambient_dim != self.dims[i]:
                raise ValueError(f"domain ambient mismatch in degree {i}")

    @property
    def degree(self) -> int:
        return len(self.dims) - 1

    def diff(self, i: int) -> np.ndarray:
        """Total matrix of the i-th differential; zero maps beyond the ends."""
        if 0 <= i < self.degree:
            return self.diffs[i]
        if i == self.degree:
            return rzeros(0, self.dims[i])
        if i == -1:
            return rzeros(self.dims[0], 0)
        raise IndexError(f"degree {i} out of range")

    def domain(self, i: int) -> Subspace:
        if i == -1:
            return full_subspace(0)
        return self.domains[i]

    def has_full_domains(self) -> bool:
        return all(v.dim == self.dims[i] for i, v in enumerate(self.domains))

    def kernel(self, i: int) -> Subspace:
        """Ker of the i-th differential restricted to its domain."""
        if i == self.degree:
            return self.domains[i]
        return self._cached(
            ("kernel", i),
            lambda: meet_join(self.domains[i], kernel_basis(self.diffs[i]))[0],
        )

    def range(self, i: int) -> Subspace:
        """Range of the i-th differential applied to its domain."""
        if i < 0 or i >= self.degree:
            return span(rzeros(self.dims[min(max(i + 1, 0), self.degree)], 0))
        return self._cached(
            ("range", i),
            lambda: image_basis(mm(self.diffs[i], self.domains[i].basis)),
        )


def full_complex(dims, grams, diffs) -> FiniteComplex:
    domains = tuple(full_subspace(d) for d in dims)
    return FiniteComplex(tuple(dims), tuple(grams), tuple(diffs), domains)


def standard_complex(diffs, top_dim: int | None = None) -> FiniteComplex:
    """Full-domain complex with standard inner products, from its matrices."""
    if diffs:
        dims = [d.shape[1] for d in diffs] + [diffs[-1].shape[0]]
    else:
        dims = [0 if top_dim is None else top_dim]
    grams = [standard_inner_product(d) for d in dims]
    return full_complex(dims, grams, diffs)


def validate(c: FiniteComplex) -> str | None:
    """None when both complex laws hold; otherwise the first violation."""
    return c._cached("validate", lambda: _validate(c))


def _validate(c: FiniteComplex) -> str | None:
    for i in range(c.degree):
        image = mm(c.diffs[i], c.domains[i].basis)
        if not c.domains[i + 1].contains(span(image)):
            return f"domain violation at degree {i}: D({i})·𝒟({i}) ⊄ 𝒟({i + 1})"
        if i + 1 < c.degree and not is_zero(mm(c.diffs[i + 1], image)):
            return f"composition violation at degree {i}: D({i + 1})∘D({i}) ≠ 0 on 𝒟({i})"
    return None


def adjoint(c: FiniteComplex, i: int) -> np.ndarray:
    """The adjoint D_i*: H_{i+1} → H_i with range inside 𝒟(D_i).

    Defined by ⟨D_i v, w⟩ = ⟨v, D_i* w⟩ for all v in the domain; among the
    representatives this picks the one with values in the domain (minimal
    norm), which reduces to the classical adjoint on full domains.
    """
    if not 0 <= i < c.degree:
        raise IndexError(f"degree {i} out of range")
    return c._cached(("adjoint", i), lambda: _adjoint(c, i))


def _adjoint(c: FiniteComplex, i: int) -> np.ndarray:
    b = c.domains[i].basis
    if b.shape[1] == 0:
        return rzeros(c.dims[i], c.dims[i + 1])
    gram_on_dom = mm(b.T, c.grams[i].gram, b)
    # right-to-left association avoids any dense dims[i] x dims[i] intermediate
    paired = mm(b.T, mm(c.diffs[i].T, c.grams[i + 1].gram))
    return mm(b, mm(invert(gram_on_dom), paired))


def adjoint_total(c: FiniteComplex, i: int) -> np.ndarray:
    """adjoint() extended with zero maps at both ends of the grading."""
    if i == -1:
        return rzeros(0, c.dims[0])
    if i == c.degree:
        return rzeros(c.dims[i], 0)
    return adjoint(c, i)


def harmonic_space(c: FiniteComplex, i: int) -> Subspace:
    """ℋ^i = Ker(D_i|domain) ∩ Ker(D_{i-1}*)."""
    ker = c.kernel(i)
    if i == 0:
        return ker
    return c._cached(
        ("harmonic", i),
        lambda: meet_join(ker, kernel_basis(adjoint(c, i - 1)))[0],
    )


@dataclass(frozen=True)
class DegreeReport:
    dim: int
    harmonic: Subspace
    range_in: Subspace = field(compare=False)
    range_adjoint: Subspace = field(compare=False)
    kodaira_exact: bool = True


@dataclass(frozen=True)
class CohomologyReport:
    degrees: tuple[DegreeReport, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d.dim for d in self.degrees)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d.dim for i, d in enumerate(self.degrees))

    @property
    def kodaira_exact(self) -> tuple[bool, ...]:
        return tuple(d.kodaira_exact for d in self.degrees)


def cohomology(c: FiniteComplex) -> CohomologyReport:
    """Cohomology dims, harmonic spaces and the Kodaira components per degree.

    dim H^i is Ker(D_i|domain) minus ran(D_{i-1}|domain); the Kodaira flag
    records whether ℋ^i ⊕ ran(D_{i-1}) ⊕ ran(D_i*) fills the whole space,
    which can fail once domains are proper subspaces.
    """
    return c._cached("cohomology", lambda: _cohomology(c))


def _cohomology(c: FiniteComplex) -> CohomologyReport:
    problem = validate(c)
    if problem is not None:
        raise ValueError(problem)
    reports = []
    for i in range(c.degree + 1):
        ker = c.kernel(i)
        rng = c.range(i - 1)
        harm = harmonic_space(c, i)
        adj_rng = (
            image_basis(adjoint(c, i)) if i < c.degree else span(rzeros(c.dims[i], 0))
        )
        exact = is_direct_sum(full_subspace(c.dims[i]), [harm, rng, adj_rng])
        reports.append(
            DegreeReport(
                dim=ker.dim - rng.dim,
                harmonic=harm,
                range_in=rng,
                range_adjoint=adj_rng,
                kodaira_exact=exact,
            )
        )
    return CohomologyReport(tuple(reports))


class ProperDomainError(ValueError):
    """Raised by operations whose defining identities need full domains."""


def laplacian(c: FiniteComplex, i: int) -> tuple[np.ndarray, Subspace]:
    """Δ_i = D_i*·D_i + D_{i-1}·D_{i-1}* and its kernel, on full domains."""
    if not c.has_full_domains():
        raise ProperDomainError("laplacian needs full domains")
    if not 0 <= i <= c.degree:
        raise IndexError(f"degree {i} out of range")
    up = mm(adjoint_total(c, i), c.diff(i))
    down = mm(c.diff(i - 1), adjoint_total(c, i - 1))
    delta = up + down
    return delta, kernel_basis(delta)


def dual_complex(c: FiniteComplex) -> FiniteComplex:
    """Spaces reindexed H_{n-i} with the adjoints as differentials."""
    if not c.has_full_domains():
        raise ProperDomainError("dual complex needs full domains")
    n = c.degree
    dims = tuple(reversed(c.dims))
    grams = tuple(reversed(c.grams))
    diffs = tuple(adjoint(c, n - j - 1) for j in range(n))
    return full_complex(dims, grams, diffs)
