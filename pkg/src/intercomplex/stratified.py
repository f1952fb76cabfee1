"""Triangulated stratified pseudomanifolds and intersection homology.

A stratified complex is a pure simplicial complex whose simplices carry the
label of the stratum containing their interior; the filtration skeleta X_j
are recovered from those labels.  Chains use Friedman's stratified
coefficients: the degree-i chain space is spanned by the i-simplices not
contained in X_{n-1}, and boundary faces inside X_{n-1} are dropped.

Perversities are arbitrary integer functions on the singular strata; a
generator is p-allowable when, for every singular stratum Y, its largest
face inside the closure of Y has dimension at most i - cod(Y) + p(Y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import oracles
from .rational import (
    Q1,
    Subspace,
    full_subspace,
    image_basis,
    kernel_basis,
    meet_join,
    mm,
    rzeros,
    span,
    zero_subspace,
)

Simplex = tuple[int, ...]


class ValidationError(ValueError):
    """Structural defect in a stratified-complex input."""


@dataclass(frozen=True)
class Stratum:
    label: str
    dim: int
    codim: int


@dataclass(frozen=True)
class Perversity:
    """Integer values on singular strata, by label."""

    values: tuple[tuple[str, int], ...]

    @staticmethod
    def of(mapping: dict[str, int]) -> "Perversity":
        return Perversity(tuple(sorted((k, int(v)) for k, v in mapping.items())))

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)

    def __getitem__(self, label: str) -> int:
        for k, v in self.values:
            if k == label:
                return v
        raise KeyError(label)

    def leq(self, other: "Perversity") -> bool:
        mine, theirs = self.as_dict(), other.as_dict()
        return set(mine) == set(theirs) and all(mine[k] <= theirs[k] for k in mine)


@dataclass(frozen=True)
class StratifiedComplex:
    """A pure, labeled, filtration-compatible simplicial pseudomanifold."""

    n_vertices: int
    dimension: int
    top_cells: tuple[Simplex, ...]
    orientation: tuple[int, ...] | None      # sign per top cell, if supplied
    strata: tuple[Stratum, ...]              # singular strata only
    labels: tuple[tuple[Simplex, str], ...]  # labels of the singular simplices
    weights: tuple[tuple[str, Fraction], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # -- basic structure --------------------------------------------------

    def simplices(self, i: int) -> list[Simplex]:
        return self._cached("simplices", lambda: oracles.simplex_closure(self.top_cells))[i]

    def all_dims(self) -> range:
        return range(self.dimension + 1)

    def stratum_label(self, s: Simplex) -> str | None:
        """Label of the singular stratum holding the interior, None if regular."""
        return self._cached("labels_map", lambda: dict(self.labels)).get(tuple(sorted(s)))

    def stratum_dim(self, s: Simplex) -> int:
        label = self.stratum_label(s)
        if label is None:
            return self.dimension
        return self._cached("strata_map", lambda: {st.label: st for st in self.strata})[
            label
        ].dim

    def is_regular(self, s: Simplex) -> bool:
        return self.stratum_label(s) is None

    def singular_strata(self) -> tuple[Stratum, ...]:
        return self.strata

    def closure_of(self, label: str) -> frozenset[Simplex]:
        """All simplices inside the closure of the given stratum."""

        def compute():
            out = set()
            for s, lab in self.labels:
                if lab == label:
                    for k in range(1, len(s) + 1):
                        out.update(combinations(s, k))
            return frozenset(out)

        return self._cached(("closure", label), compute)

    def contact_dim(self, s: Simplex, label: str) -> int | None:
        """dim of the largest face of s inside the closure of the stratum."""
        closure = self.closure_of(label)
        best = None
        for k in range(len(s), 0, -1):
            if any(f in closure for f in combinations(s, k)):
                best = k - 1
                break
        return best

    # -- stratified (R0) chain complex ------------------------------------

    def regular_simplices(self, i: int) -> list[Simplex]:
        return self._cached(
            ("regular", i),
            lambda: [s for s in self.simplices(i) if self.is_regular(s)],
        )

    def chain_dim(self, i: int) -> int:
        if not 0 <= i <= self.dimension:
            return 0
        return len(self.regular_simplices(i))

    def boundary_matrix(self, i: int) -> np.ndarray:
        """R0 boundary ∂_i: faces falling into X_{n-1} are dropped."""

        def compute():
            rows = {s: k for k, s in enumerate(self.regular_simplices(i - 1))}
            cols = self.regular_simplices(i)
            m = rzeros(len(rows), len(cols))
            for c, s in enumerate(cols):
                for j in range(len(s)):
                    face = s[:j] + s[j + 1 :]
                    r = rows.get(face)
                    if r is not None:
                        m[r, c] = Q1 if j % 2 == 0 else -Q1
            return m

        if i <= 0 or i > self.dimension:
            return rzeros(0 if i > self.dimension else self.chain_dim(i - 1), self.chain_dim(max(i, 0)))
        return self._cached(("boundary", i), compute)

    # -- perversity helpers ------------------------------------------------

    def zero_perversity(self) -> Perversity:
        return Perversity.of({st.label: 0 for st in self.strata})

    def top_perversity(self) -> Perversity:
        return Perversity.of({st.label: st.codim - 2 for st in self.strata})

    def upper_middle_perversity(self) -> Perversity:
        return Perversity.of({st.label: (st.codim - 1) // 2 for st in self.strata})

    def lower_middle_perversity(self) -> Perversity:
        return dual_perversity(self, self.upper_middle_perversity())

    def check_perversity(self, p: Perversity) -> None:
        have = {k for k, _ in p.values}
        need = {st.label for st in self.strata}
        if have != need:
            raise ValidationError(
                f"perversity labels {sorted(have)} do not match strata {sorted(need)}"
            )


def dual_perversity(x: StratifiedComplex, p: Perversity) -> Perversity:
    """q = t - p with t(Y) = cod(Y) - 2."""
    x.check_perversity(p)
    return Perversity.of({st.label: st.codim - 2 - p[st.label] for st in x.strata})


def bracket(value: Fraction) -> int:
    """[[x]]: the greatest integer strictly less than x."""
    f = math.floor(value)
    return f - 1 if f == value else f


def perversity_from_weights(x: StratifiedComplex, weights: dict[str, Fraction]) -> Perversity:
    """The metric perversity of a quasi-edge metric with the given weights.

    Link dimension is cod(Y) - 1; the three branches are
    0 when l = 0;  l/2 + [[1/(2c)]] for even l > 0;  (l-1)/2 + [[1/2 + 1/(2c)]]
    for odd l.
    """
    out = {}
    for st in x.strata:
        if st.label not in weights:
            raise ValidationError(f"missing weight for stratum {st.label}")
        c = Fraction(weights[st.label])
        if c <= 0:
            raise ValidationError(f"nonpositive weight for stratum {st.label}")
        l = st.codim - 1
        if l == 0:
            out[st.label] = 0
        elif l % 2 == 0:
            out[st.label] = l // 2 + bracket(1 / (2 * c))
        else:
            out[st.label] = (l - 1) // 2 + bracket(Fraction(1, 2) + 1 / (2 * c))
    return Perversity.of(out)


# -- construction and validation -------------------------------------------


def build_stratified(
    n_vertices: int,
    cells,
    labels: dict[Simplex, str] | None = None,
    strata: dict[str, int] | None = None,
    orientation: list[int] | None = None,
    weights: dict[str, Fraction] | None = None,
) -> StratifiedComplex:
    """Assemble and fully validate a stratified complex.

    ``cells`` are the maximal simplices (a non-top maximal cell is a purity
    error); ``labels`` maps each singular simplex to its stratum label;
    ``strata`` gives each label's dimension.
    """
    cells = [tuple(sorted(c)) for c in cells]
    if not cells:
        raise ValidationError("empty complex")
    if len(set(cells)) != len(cells):
        raise ValidationError("duplicate top cells")
    for c in cells:
        if len(set(c)) != len(c) or any(not 0 <= v < n_vertices for v in c):
            raise ValidationError(f"bad cell {c}")
    n = max(len(c) for c in cells) - 1
    top = [c for c in cells if len(c) == n + 1]
    top_faces = set()
    for c in top:
        for k in range(1, len(c) + 1):
            top_faces.update(combinations(c, k))
    for c in cells:
        if len(c) < n + 1 and c not in top_faces:
            raise ValidationError(
                f"purity violation: cell {c} is not a face of any {n}-simplex"
            )
    labels = {tuple(sorted(k)): v for k, v in (labels or {}).items()}
    strata = dict(strata or {})
    for s, lab in labels.items():
        if s not in top_faces:
            raise ValidationError(f"label on unknown simplex {s}")
        if lab not in strata:
            raise ValidationError(f"label {lab} missing from the stratum table")
    stratum_objs = []
    for lab, dim in sorted(strata.items()):
        if not 0 <= dim < n:
            raise ValidationError(f"stratum {lab} must have dimension in [0, {n})")
        carried = [s for s, l in labels.items() if l == lab]
        if not carried:
            raise ValidationError(f"stratum {lab} labels no simplex")
        top_carried = max(len(s) - 1 for s in carried)
        if top_carried != dim:
            raise ValidationError(
                f"stratum {lab} declared dimension {dim} but its largest simplex "
                f"has dimension {top_carried}"
            )
        stratum_objs.append(Stratum(lab, dim, n - dim))
    x = StratifiedComplex(
        n_vertices=n_vertices,
        dimension=n,
        top_cells=tuple(sorted(top)),
        orientation=tuple(orientation) if orientation is not None else None,
        strata=tuple(stratum_objs),
        labels=tuple(sorted(labels.items())),
        weights=tuple(sorted((k, Fraction(v)) for k, v in (weights or {}).items())),
    )
    if x.orientation is not None and len(x.orientation) != len(x.top_cells):
        raise ValidationError("orientation sign count does not match top cells")
    _validate_structure(x)
    return x


def _validate_structure(x: StratifiedComplex) -> None:
    n = x.dimension
    # simplex dimension cannot exceed its stratum dimension
    for s, lab in x.labels:
        dim = x.stratum_dim(s)
        if len(s) - 1 > dim:
            raise ValidationError(
                f"simplex {s} of dimension {len(s) - 1} labeled into "
                f"{dim}-dimensional stratum {lab}"
            )
    # faces live in closures: stratum dimension is monotone under faces
    for i in range(1, n + 1):
        for s in x.simplices(i):
            d = x.stratum_dim(s)
            for j in range(len(s)):
                face = s[:j] + s[j + 1 :]
                if x.stratum_dim(face) > d:
                    raise ValidationError(
                        f"face {face} lies in a higher-dimensional stratum than {s}"
                    )
    # pseudomanifold condition on regular (n-1)-simplices
    counts: dict[Simplex, int] = {}
    for c in x.top_cells:
        for j in range(len(c)):
            face = c[:j] + c[j + 1 :]
            counts[face] = counts.get(face, 0) + 1
    for s in x.simplices(n - 1) if n >= 1 else []:
        if x.is_regular(s) and counts.get(s, 0) != 2:
            raise ValidationError(
                f"regular {n - 1}-simplex {s} lies in {counts.get(s, 0)} top cells, not 2"
            )
    # filtration compatibility: X_j meets every simplex in a single face
    sing_dims = sorted({st.dim for st in x.strata})
    for j in sing_dims:
        for i in range(1, n + 1):
            for s in x.simplices(i):
                union: tuple[int, ...] = ()
                for k in range(1, len(s) + 1):
                    for f in combinations(s, k):
                        if x.stratum_dim(f) <= j:
                            union = tuple(sorted(set(union) | set(f)))
                if union and x.stratum_dim(union) > j:
                    raise ValidationError(
                        f"simplex {s} meets X_{j} in more than one face"
                    )


# -- allowability and intersection homology --------------------------------


def allowable_generators(x: StratifiedComplex, i: int, p: Perversity) -> list[int]:
    """Indices of the p-allowable regular i-simplices."""
    x.check_perversity(p)
    out = []
    for k, s in enumerate(x.regular_simplices(i)):
        ok = True
        for st in x.strata:
            contact = x.contact_dim(s, st.label)
            if contact is not None and contact > i - st.codim + p[st.label]:
                ok = False
                break
        if ok:
            out.append(k)
    return out


def allowable_subspace(x: StratifiedComplex, i: int, p: Perversity) -> Subspace:
    """Span of the allowable generators inside the degree-i R0 chain space."""
    if not 0 <= i <= x.dimension:
        raise IndexError(f"degree {i} out of range")
    dim = x.chain_dim(i)
    idx = allowable_generators(x, i, p)
    basis = rzeros(dim, len(idx))
    for col, k in enumerate(idx):
        basis[k, col] = Q1
    return span(basis)


def intersection_chains(x: StratifiedComplex, i: int, p: Perversity) -> Subspace:
    """I^p S_i: allowable chains with allowable boundary."""

    def compute():
        dim = x.chain_dim(i)
        allowed = set(allowable_generators(x, i, p))
        rows = []
        for k in range(dim):
            if k not in allowed:
                row = rzeros(1, dim)
                row[0, k] = Q1
                rows.append(row)
        if i >= 1:
            allowed_prev = set(allowable_generators(x, i - 1, p))
            boundary = x.boundary_matrix(i)
            for r in range(boundary.shape[0]):
                if r not in allowed_prev:
                    rows.append(boundary[r : r + 1, :])
        if not rows:
            return full_subspace(dim)
        return kernel_basis(np.concatenate(rows, axis=0))

    return x._cached(("ichains", i, p), compute)


@dataclass(frozen=True)
class IHReport:
    perversity: Perversity
    dims: tuple[int, ...]

    @property
    def chi(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))


def intersection_homology(x: StratifiedComplex, p: Perversity) -> IHReport:
    """dim I^p H_i over the rationals, by exact ranks."""
    dims = []
    for i in range(x.dimension + 1):
        cycles = _ih_cycles(x, i, p)
        boundaries = _ih_boundaries(x, i, p)
        dims.append(cycles.dim - boundaries.dim)
    return IHReport(p, tuple(dims))


def _ih_cycles(x: StratifiedComplex, i: int, p: Perversity) -> Subspace:
    def compute():
        chains = intersection_chains(x, i, p)
        if i == 0:
            return chains
        meet, _ = meet_join(chains, kernel_basis(x.boundary_matrix(i)))
        return meet

    return x._cached(("icycles", i, p), compute)


def _ih_boundaries(x: StratifiedComplex, i: int, p: Perversity) -> Subspace:
    if i >= x.dimension:
        return zero_subspace(x.chain_dim(i))
    chains_up = intersection_chains(x, i + 1, p)
    return image_basis(mm(x.boundary_matrix(i + 1), chains_up.basis))


@dataclass(frozen=True)
class IHImageReport:
    low: Perversity
    high: Perversity
    low_dims: tuple[int, ...]
    high_dims: tuple[int, ...]
    image_dims: tuple[int, ...]

    @property
    def image_chi(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.image_dims))


def image_ih(x: StratifiedComplex, p: Perversity, q: Perversity) -> IHImageReport:
    """dim im(I^p H_i → I^q H_i) for p ≤ q, via the chain-level inclusion."""
    x.check_perversity(p)
    x.check_perversity(q)
    if not p.leq(q):
        raise ValidationError("image_ih needs perversities with p ≤ q stratum-wise")
    dims = []
    for i in range(x.dimension + 1):
        cycles_p = _ih_cycles(x, i, p)
        boundaries_q = _ih_boundaries(x, i, q)
        meet, _ = meet_join(cycles_p, boundaries_q)
        dims.append(cycles_p.dim - meet.dim)
    return IHImageReport(
        low=p,
        high=q,
        low_dims=intersection_homology(x, p).dims,
        high_dims=intersection_homology(x, q).dims,
        image_dims=tuple(dims),
    )


# -- regular part and the duality / chi report ------------------------------


def regular_part_cells(x: StratifiedComplex) -> list[Simplex]:
    """Maximal cells of the full subcomplex on the vertices outside X_{n-1}."""
    regular_vertices = {
        v for v in range(x.n_vertices) if x.is_regular((v,)) and (v,) in set(x.simplices(0))
    }
    cells = []
    for c in x.top_cells:
        kept = tuple(v for v in c if v in regular_vertices)
        if kept:
            cells.append(kept)
    return cells


def regular_part_betti(x: StratifiedComplex) -> list[int]:
    betti = oracles.betti_numbers(regular_part_cells(x))
    return betti + [0] * (x.dimension + 1 - len(betti))


@dataclass(frozen=True)
class DualityChiReport:
    image: IHImageReport
    duality_flags: tuple[bool, ...]           # dim_j == dim_{n-j}
    chi_identity: bool                        # Cor-style parity identity
    betti_regular: tuple[int, ...]
    betti_flags_low: tuple[bool, ...]         # b_j(reg) ≤ dim I^low H_j
    betti_flags_high: tuple[bool, ...]
    within_hypotheses: bool

    @property
    def duality_holds(self) -> bool:
        return all(self.duality_flags)


def duality_chi_report(x: StratifiedComplex, p: Perversity, q: Perversity) -> DualityChiReport:
    """Image duality j ↔ n-j, the chi parity identity, and Betti comparisons.

    Requires q to be the dual of p and the complex to be orientable; whether
    (p, q) sits inside the duality proposition's hypotheses is recorded, and
    reports outside them are a user's own risk.
    """
    from .pairing import coherent_orientation

    x.check_perversity(p)
    if dual_perversity(x, p) != q:
        raise ValidationError("q must be the dual perversity t - p")
    coherent_orientation(x)  # raises on non-orientable input
    if p.leq(q):
        low, high = p, q
    elif q.leq(p):
        low, high = q, p
    else:
        raise ValidationError("incomparable perversity pair")
    image = image_ih(x, low, high)
    n = x.dimension
    dims = image.image_dims
    duality_flags = tuple(dims[j] == dims[n - j] for j in range(n + 1))
    chi = image.image_chi
    if n % 2 == 1:
        chi_identity = chi == 0
    elif (n // 2) % 2 == 0:
        chi_identity = chi == dims[n // 2]
    else:
        chi_identity = chi == -dims[n // 2]
    betti = tuple(regular_part_betti(x))
    low_dims = image.low_dims
    high_dims = image.high_dims
    betti_low = tuple(betti[j] <= low_dims[j] for j in range(n + 1))
    betti_high = tuple(betti[j] <= high_dims[j] for j in range(n + 1))
    hyp_a = all(low[st.label] >= 0 for st in x.strata if st.codim > 1) and all(
        low[st.label] == -1 for st in x.strata if st.codim == 1
    )
    hyp_b = all(high[st.label] >= 0 for st in x.strata if st.codim > 1) and all(
        high[st.label] == 0 for st in x.strata if st.codim == 1
    )
    return DualityChiReport(
        image=image,
        duality_flags=duality_flags,
        chi_identity=chi_identity,
        betti_regular=betti,
        betti_flags_low=betti_low,
        betti_flags_high=betti_high,
        within_hypotheses=hyp_a or hyp_b,
    )
