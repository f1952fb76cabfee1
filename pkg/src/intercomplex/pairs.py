"""Pairs of complexes D ⊆ L sharing spaces, and everything they induce.

The ambient complex L has full domains; the smaller complex D is the
restriction of the same matrices to declared domain subspaces V_i.  The four
operators attached to such a pair, mirroring the max/min extensions and
their formal adjoints, are

    d_max,i  = L_i                     (full domain)
    d_min,i  = L_i restricted to V_i
    δ_min,i  = adjoint of d_max,i      (the plain gram adjoint L_i*)
    δ_max,i  = adjoint of d_min,i      (minimal-norm representative in V_i)

Image cohomology, relatedness through link maps, the Friedrichs composition
identities and the five-way equivalence are all computed from these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complexes import FiniteComplex, adjoint, cohomology, harmonic_space, validate
from .rational import (
    InnerProduct,
    Subspace,
    full_subspace,
    image_basis,
    invert,
    is_direct_sum,
    is_zero,
    kernel_basis,
    mat_eq,
    meet_join,
    mm,
    orth,
    rank,
    rzeros,
    span,
)


@dataclass(frozen=True)
class ComplexPair:
    """A full-domain complex L together with nested domains V_i ⊆ H_i."""

    ambient: FiniteComplex
    domains: tuple[Subspace, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def __post_init__(self):
        if not self.ambient.has_full_domains():
            raise ValueError("the ambient complex must have full domains")
        if len(self.domains) != self.ambient.degree + 1:
            raise ValueError("one domain per degree required")
        problem = validate(self.minimal)
        if problem is not None:
            raise ValueError(f"domains do not form a subcomplex: {problem}")

    @property
    def minimal(self) -> FiniteComplex:
        """The complex D: the same matrices restricted to the domains."""
        return self._cached(
            "minimal",
            lambda: FiniteComplex(
                self.ambient.dims, self.ambient.grams, self.ambient.diffs, self.domains
            ),
        )

    @property
    def degree(self) -> int:
        return self.ambient.degree

    # -- the four operators, as total matrices ---------------------------

    def d_max(self, i: int) -> np.ndarray:
        return self.ambient.diff(i)

    def d_min_domain(self, i: int) -> Subspace:
        if i == -1:
            return full_subspace(0)
        return self.domains[i]

    def delta_min(self, i: int) -> np.ndarray:
        """Adjoint of d_max,i: the full gram adjoint H_{i+1} → H_i."""
        return self._cached(("delta_min", i), lambda: adjoint_full(self.ambient, i))

    def delta_max(self, i: int) -> np.ndarray:
        """Adjoint of d_min,i, with values in V_i (minimal-norm choice)."""
        if i == -1:
            return rzeros(0, self.ambient.dims[0])
        if i == self.degree:
            return rzeros(self.ambient.dims[i], 0)
        return adjoint(self.minimal, i)

    # -- harmonic spaces of the three extensions -------------------------

    def harmonic_abs(self, i: int) -> Subspace:
        """Ker(d_max,i) ∩ Ker(δ_min,i-1): harmonics of L."""
        return self._cached(("h_abs", i), lambda: harmonic_space(self.ambient, i))

    def harmonic_rel(self, i: int) -> Subspace:
        """Ker(d_min,i) ∩ Ker(δ_max,i-1): harmonics of D."""
        return harmonic_space(self.minimal, i)

    def harmonic_min(self, i: int) -> Subspace:
        """Ker(d_min,i) ∩ Ker(δ_min,i-1): the smallest Hodge space."""

        def compute():
            ker = self.minimal.kernel(i)
            if i == 0:
                return ker
            return meet_join(ker, kernel_basis(self.delta_min(i - 1)))[0]

        return self._cached(("h_min", i), compute)


def adjoint_full(c: FiniteComplex, i: int) -> np.ndarray:
    """Plain gram adjoint of the total matrix of the i-th differential."""
    if i == -1:
        return rzeros(0, c.dims[0])
    if i == c.degree:
        return rzeros(c.dims[i], 0)
    return mm(invert(c.grams[i].gram), c.diffs[i].T, c.grams[i + 1].gram)


def _project_span(vectors: np.ndarray, onto: Subspace, gram) -> Subspace:
    """Span of the gram-orthogonal projections of the columns onto a subspace."""
    b = onto.basis
    if onto.dim == 0 or vectors.shape[1] == 0:
        return span(rzeros(onto.ambient_dim, 0))
    coords = mm(invert(mm(b.T, gram.gram, b)), mm(b.T, mm(gram.gram, vectors)))
    return image_basis(mm(b, coords))


@dataclass(frozen=True)
class DegreeImage:
    dim: int
    harmonic_image: Subspace = field(compare=False)
    injective: bool = True
    surjective: bool = True


@dataclass(frozen=True)
class ImageReport:
    """Per-degree dimensions of im(H^j(D) → H^j(L)) and their witnesses."""

    degrees: tuple[DegreeImage, ...]
    min_dims: tuple[int, ...]
    max_dims: tuple[int, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d.dim for d in self.degrees)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** j * d.dim for j, d in enumerate(self.degrees))


def image_cohomology(p: ComplexPair) -> ImageReport:
    """im(H^j(D) → H^j(L)) as Ker(D_j) / (ran(L_{j-1}) ∩ V_j), per degree.

    The harmonic witness ran(π_1,j), the gram-orthogonal projection of the
    D-harmonics into the L-harmonics, is computed alongside and must have
    the same dimension; a mismatch would be a construction bug.
    """
    return p._cached("image_cohomology", lambda: _image_cohomology(p))


def _image_cohomology(p: ComplexPair) -> ImageReport:
    d_report = cohomology(p.minimal)
    l_report = cohomology(p.ambient)
    out = []
    for j in range(p.degree + 1):
        ker_d = p.minimal.kernel(j)
        ran_l = p.ambient.range(j - 1)
        meet, _ = meet_join(ran_l, p.domains[j])
        dim = ker_d.dim - meet.dim
        h_abs = l_report.degrees[j].harmonic
        h_rel = d_report.degrees[j].harmonic
        witness = _project_span(h_rel.basis, h_abs, p.ambient.grams[j])
        if witness.dim != dim:
            raise AssertionError(
                f"harmonic witness dimension {witness.dim} != quotient dimension "
                f"{dim} in degree {j}"
            )
        out.append(
            DegreeImage(
                dim=dim,
                harmonic_image=witness,
                injective=dim == d_report.dims[j],
                surjective=dim == l_report.dims[j],
            )
        )
    return ImageReport(tuple(out), d_report.dims, l_report.dims)


@dataclass(frozen=True)
class LinkMaps:
    """Graded maps φ_i: H_i → H_{n-i} with the intertwining constants c_i."""

    maps: tuple[np.ndarray, ...]
    constants: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.constants) != len(self.maps) - 1:
            raise ValueError("need one constant per differential")
        if any(c == 0 for c in self.constants):
            raise ValueError("link constants must be nonzero")

    def inverse(self, i: int) -> np.ndarray:
        return invert(self.maps[i])


def identity_links(dims, constants=None) -> LinkMaps:
    from .rational import reye

    n = len(dims) - 1
    for i in range(n + 1):
        if dims[i] != dims[n - i]:
            raise ValueError("identity links need mirror-symmetric dimensions")
    maps = tuple(reye(d) for d in dims)
    cs = tuple(Fraction(c) for c in constants) if constants else tuple(
        Fraction(1) for _ in range(n)
    )
    return LinkMaps(maps, cs)


@dataclass(frozen=True)
class RelatedReport:
    related: bool
    complementary: bool
    isometric: tuple[bool, ...]
    domain_condition_checkable: bool


def check_related(d: FiniteComplex, l: FiniteComplex, links: LinkMaps) -> RelatedReport:
    """Test the intertwining identity L*_{n-i-1}∘φ_i = c_i·(φ_{i+1}∘D_i) on each domain.

    ``complementary`` additionally requires every link map to be a gram
    isometry.  The paper-level condition φ_i(𝒟(D_i)) = 𝒟(L*) degenerates at
    finite dimension (adjoint domains are everything); it is only checkable
    when the domains are full, which the report records.
    """
    n = d.degree
    if l.degree != n or d.dims != l.dims:
        raise ValueError("the complexes must share their graded spaces")
    if not l.has_full_domains():
        raise ValueError("the larger complex must have full domains")
    if len(links.maps) != n + 1:
        raise ValueError("need one link map per degree")
    for i, phi in enumerate(links.maps):
        if phi.shape != (d.dims[n - i], d.dims[i]):
            raise ValueError(f"link map {i} must map H_{i} → H_{n - i}")
        if rank(phi) != phi.shape[0] or phi.shape[0] != phi.shape[1]:
            raise ValueError(f"link map {i} is not invertible")
    related = True
    for i in range(n):
        lhs = mm(adjoint_full(l, n - i - 1), links.maps[i])
        rhs = links.constants[i] * mm(links.maps[i + 1], d.diff(i))
        onto = d.domain(i).basis
        if not is_zero(mm(lhs - rhs, onto)):
            related = False
            break
    isometric = tuple(
        mat_eq(mm(phi.T, l.grams[n - i].gram, phi), d.grams[i].gram)
        for i, phi in enumerate(links.maps)
    )
    return RelatedReport(
        related=related,
        complementary=related and all(isometric),
        isometric=isometric,
        domain_condition_checkable=d.has_full_domains(),
    )


def check_related_pair(p: ComplexPair, links: LinkMaps) -> RelatedReport:
    return check_related(p.minimal, p.ambient, links)


def build_complementary(d: FiniteComplex, links: LinkMaps) -> FiniteComplex:
    """The complex L with L_i the adjoint of φ_{n-i}∘D_{n-i-1}∘φ_{n-i-1}⁻¹.

    With invertible links the result is related to d with constants 1; with
    isometric links the pair is complementary and harmonic dimensions
    mirror: dim ℋ^j(d) == dim ℋ^{n-j}(L).
    """
    if not d.has_full_domains():
        raise ValueError("build_complementary needs a full-domain complex")
    n = d.degree
    diffs = []
    for i in range(n):
        t = mm(links.maps[n - i], d.diff(n - i - 1), links.inverse(n - i - 1))
        diffs.append(mm(invert(d.grams[i + 1].gram), t.T, d.grams[i].gram))
    from .complexes import full_complex

    return full_complex(d.dims, d.grams, tuple(diffs))


@dataclass(frozen=True)
class FriedrichsReport:
    """The finite analogue of the Friedrichs-composition identities."""

    kernel: Subspace
    expected_kernel: Subspace
    kernel_identity: bool
    range_composition: Subspace
    range_max: Subspace
    ranges_equal: bool


def _block_embed(pieces: list[np.ndarray], row_dims, col_dims) -> np.ndarray:
    total = rzeros(sum(row_dims), sum(col_dims))
    r = 0
    rows = [0]
    for d in row_dims:
        rows.append(rows[-1] + d)
    cols = [0]
    for d in col_dims:
        cols.append(cols[-1] + d)
    for (bi, bj), m in pieces:
        total[rows[bi] : rows[bi + 1], cols[bj] : cols[bj + 1]] = m
    return total


def total_operators(p: ComplexPair) -> tuple[np.ndarray, np.ndarray, Subspace]:
    """(A_min, A_max, ⊕V) on the direct sum of all degrees.

    A_min = d_min + δ_min with domain ⊕V_i; A_max = d_max + δ_max, total.
    """
    n = p.degree
    dims = list(p.ambient.dims)
    a_min = []
    a_max = []
    for i in range(n + 1):
        if i < n:
            a_min.append(((i + 1, i), p.ambient.diff(i)))
            a_max.append(((i + 1, i), p.ambient.diff(i)))
        if i > 0:
            a_min.append(((i - 1, i), p.delta_min(i - 1)))
            a_max.append(((i - 1, i), p.delta_max(i - 1)))
    blocks_min = _block_embed(a_min, dims, dims)
    blocks_max = _block_embed(a_max, dims, dims)
    dom_pieces = [((i, i), p.domains[i].basis) for i in range(n + 1)]
    dom = span(
        _block_embed(dom_pieces, dims, [p.domains[i].dim for i in range(n + 1)])
    )
    return blocks_min, blocks_max, dom


def friedrichs_identities(p: ComplexPair) -> FriedrichsReport:
    """Ker(A_max∘A_min) == ⊕_i (Ker d_min,i ∩ Ker δ_min,i-1), exactly.

    The composed range is reported next to ran(A_max); the two agree whenever
    the paper's density hypotheses survive the finite model (in particular on
    full domains) but equality is not a theorem here, so it is only reported.
    """
    n = p.degree
    a_min, a_max, dom = total_operators(p)
    composed = mm(a_max, a_min)
    ker, _ = meet_join(kernel_basis(composed), dom)
    dims = list(p.ambient.dims)
    pieces = []
    col_dims = []
    for i in range(n + 1):
        h = p.harmonic_min(i)
        pieces.append(((i, len(col_dims)), h.basis))
        col_dims.append(h.dim)
    expected = span(_block_embed(pieces, dims, col_dims)) if col_dims else span(
        rzeros(sum(dims), 0)
    )
    range_comp = image_basis(mm(composed, dom.basis))
    range_max = image_basis(a_max)
    return FriedrichsReport(
        kernel=ker,
        expected_kernel=expected,
        kernel_identity=ker == expected,
        range_composition=range_comp,
        range_max=range_max,
        ranges_equal=range_comp == range_max,
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """The five equivalent descriptions of ℋ_min against the image group."""

    degree: int
    flags: tuple[bool, bool, bool, bool, bool]

    @property
    def all_agree(self) -> bool:
        return len(set(self.flags)) == 1


def delta_max_range_closure(p: ComplexPair, i: int) -> Subspace:
    """The closed range of δ_max,i, rendered as Ker(d_min,i)^⊥.

    As an honest adjoint of the (not densely defined) d_min,i, δ_max,i is a
    linear relation; the closure of its range is the gram-orthogonal
    complement of Ker(d_min,i), the identity the duality proofs actually
    consume.  It exceeds the column span of the minimal-norm matrix by the
    annihilator of the domain.
    """
    comp, _ = orth(p.minimal.kernel(i), p.ambient.grams[i])
    return comp


def dsdzm_check(p: ComplexPair, i: int, image: ImageReport | None = None) -> EquivalenceReport:
    """Evaluate the five conditions exactly in degree i.

    (1) dim ℋ_min == image-cohomology dim;
    (2) ℋ_abs == ℋ_min ⊕ (ran(δ_max,i)‾ ∩ ℋ_abs);
    (3) π_rel∘π_abs == π_min == π_abs∘π_rel;
    (4) ℋ_rel == ℋ_min ⊕ (ran d_max,i-1 ∩ ℋ_rel);
    (5) ran d_max,i-1 == (ran d_max,i-1 ∩ ℋ_rel) ⊕ ran d_min,i-1
                          ⊕ (ran d_max,i-1 ∩ ran(δ_max,i)‾),

    with ran(δ_max,i)‾ as in delta_max_range_closure.
    """
    if image is None:
        image = image_cohomology(p)
    gram = p.ambient.grams[i]
    h_abs = p.harmonic_abs(i)
    h_rel = p.harmonic_rel(i)
    h_min = p.harmonic_min(i)

    flag1 = h_min.dim == image.dims[i]

    ran_dmax = delta_max_range_closure(p, i)
    piece2, _ = meet_join(ran_dmax, h_abs)
    flag2 = is_direct_sum(h_abs, [h_min, piece2])

    _, p_abs = orth(h_abs, gram)
    _, p_rel = orth(h_rel, gram)
    _, p_min = orth(h_min, gram)
    flag3 = mat_eq(mm(p_rel, p_abs), p_min) and mat_eq(mm(p_abs, p_rel), p_min)

    ran_lprev = p.ambient.range(i - 1)
    piece4, _ = meet_join(ran_lprev, h_rel)
    flag4 = is_direct_sum(h_rel, [h_min, piece4])

    ran_dmin_prev = p.minimal.range(i - 1)
    piece5, _ = meet_join(ran_lprev, ran_dmax)
    flag5 = is_direct_sum(ran_lprev, [piece4, ran_dmin_prev, piece5])

    return EquivalenceReport(degree=i, flags=(flag1, flag2, flag3, flag4, flag5))
