"""Middle-degree pairings: cup-evaluate against the fundamental cycle.

The simplicial shadow of wedge-and-integrate: represent classes of the
middle-degree image group by cochains, cup them with the Alexander-Whitney
front/back rule on one global vertex order, and evaluate on the coherently
oriented sum of top simplices.  Symmetry is a cohomology-level fact, so the
matrix is checked and, if necessary, symmetrized before taking the inertia.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import oracles
from .complexes import full_complex
from .pairs import ComplexPair, image_cohomology
from .rational import (
    Q0,
    Q1,
    Subspace,
    congruence_signature,
    full_subspace,
    kernel_basis,
    mat_eq,
    meet_join,
    mm,
    orth,
    rank,
    rref,
    rzeros,
    span,
    standard_inner_product,
)
from .stratified import (
    Perversity,
    StratifiedComplex,
    ValidationError,
    dual_perversity,
    image_ih,
    intersection_chains,
    perversity_from_weights,
    _ih_cycles,
)

Simplex = tuple[int, ...]


class OrientationError(ValueError):
    """No coherent orientation of the top simplices exists."""


def _coherent_signs(top_cells: list[Simplex], cancel_faces: set[Simplex]) -> list[int]:
    """Signs making induced orientations cancel on every face in cancel_faces."""
    owners: dict[Simplex, list[tuple[int, int]]] = {}
    for idx, cell in enumerate(top_cells):
        for j in range(len(cell)):
            face = cell[:j] + cell[j + 1 :]
            owners.setdefault(face, []).append((idx, j))
    signs = [0] * len(top_cells)
    for start in range(len(top_cells)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = [start]
        while queue:
            idx = queue.pop()
            cell = top_cells[idx]
            for j in range(len(cell)):
                face = cell[:j] + cell[j + 1 :]
                if face not in cancel_faces:
                    continue
                for other, l in owners[face]:
                    if other == idx:
                        continue
                    needed = -signs[idx] * (-1) ** ((j - l) % 2)
                    if signs[other] == 0:
                        signs[other] = needed
                        queue.append(other)
                    elif signs[other] != needed:
                        raise OrientationError(
                            f"orientation conflict across face {face}"
                        )
    return signs


def coherent_orientation(x: StratifiedComplex) -> list[int]:
    """Orientation signs of the top cells; supplied signs are verified."""
    n = x.dimension
    cancel = {s for s in x.simplices(n - 1) if x.is_regular(s)} if n >= 1 else set()
    computed = _coherent_signs(list(x.top_cells), cancel)
    if x.orientation is not None:
        supplied = list(x.orientation)
        for face in cancel:
            total = Q0
            for idx, cell in enumerate(x.top_cells):
                for j in range(len(cell)):
                    if cell[:j] + cell[j + 1 :] == face:
                        total += supplied[idx] * (-1) ** j
            if total != 0:
                raise OrientationError(
                    f"supplied orientation does not cancel on face {face}"
                )
        return supplied
    return computed


def fundamental_cycle(x: StratifiedComplex) -> np.ndarray:
    """The coherently oriented sum of top simplices, as an R0 top chain.

    Its stratified-coefficients boundary is exactly zero; non-orientable
    input raises OrientationError.
    """
    signs = coherent_orientation(x)
    order = {s: k for k, s in enumerate(x.regular_simplices(x.dimension))}
    cycle = rzeros(x.chain_dim(x.dimension), 1)
    for idx, cell in enumerate(x.top_cells):
        cycle[order[cell], 0] = Fraction(signs[idx])
    boundary = mm(x.boundary_matrix(x.dimension), cycle)
    if any(v != 0 for v in boundary.flat):
        raise AssertionError("fundamental chain has nonzero stratified boundary")
    return cycle


@dataclass(frozen=True)
class PairingReport:
    degree: int
    representatives: np.ndarray = field(compare=False)
    matrix: np.ndarray = field(compare=False)
    signature: tuple[int, int, int] | None
    nondegenerate: bool
    symmetrized: bool
    model: bool = False

    @property
    def signature_value(self) -> int | None:
        if self.signature is None:
            return None
        return self.signature[0] - self.signature[1]


# -- relative/absolute cochain pairs for manifolds with boundary -------------


@dataclass(frozen=True)
class RelAbsPair:
    """Cochain pair of a compact triangulated manifold with boundary.

    The ambient complex is the full simplicial cochain complex; the domain
    subcomplex consists of the cochains vanishing on the boundary.
    """

    n_vertices: int
    dimension: int
    top_cells: tuple[Simplex, ...]
    simplices: tuple[tuple[Simplex, ...], ...]
    boundary_simplices: frozenset[Simplex]
    orientation: tuple[int, ...]
    pair: ComplexPair = field(compare=False)


def build_rel_abs_pair(cells, n_vertices: int) -> RelAbsPair:
    """Validate a manifold-with-boundary triangulation and build its pair."""
    cells = sorted({tuple(sorted(c)) for c in cells})
    if not cells:
        raise ValidationError("empty complex")
    n = max(len(c) for c in cells) - 1
    if any(len(c) != n + 1 for c in cells):
        raise ValidationError("top cells must all have the same dimension")
    counts: dict[Simplex, int] = {}
    for c in cells:
        for j in range(len(c)):
            face = c[:j] + c[j + 1 :]
            counts[face] = counts.get(face, 0) + 1
    if any(v > 2 for v in counts.values()):
        raise ValidationError("a ridge lies in more than two top cells")
    boundary_faces = {f for f, v in counts.items() if v == 1}
    boundary: set[Simplex] = set()
    for f in boundary_faces:
        for k in range(1, len(f) + 1):
            boundary.update(combinations(f, k))
    simplices = oracles.simplex_closure(cells)
    partials = oracles.boundary_matrices(cells)
    dims = [len(level) for level in simplices]
    grams = [standard_inner_product(d) for d in dims]
    diffs = [partials[i].T for i in range(n)]
    ambient = full_complex(dims, grams, diffs)
    domains = []
    for i, level in enumerate(simplices):
        keep = [k for k, s in enumerate(level) if s not in boundary]
        basis = rzeros(dims[i], len(keep))
        for col, k in enumerate(keep):
            basis[k, col] = Q1
        domains.append(span(basis))
    pair = ComplexPair(ambient, tuple(domains))
    signs = _coherent_signs(cells, {f for f, v in counts.items() if v == 2})
    return RelAbsPair(
        n_vertices=n_vertices,
        dimension=n,
        top_cells=tuple(cells),
        simplices=tuple(tuple(level) for level in simplices),
        boundary_simplices=frozenset(boundary),
        orientation=tuple(signs),
        pair=pair,
    )


def rel_abs_image_dims(rp: RelAbsPair) -> tuple[int, ...]:
    """dim im(H^j(rel) → H^j(abs)) per degree."""
    return image_cohomology(rp.pair).dims


def _cup_evaluate(
    alpha: np.ndarray,
    beta: np.ndarray,
    k: int,
    top_cells,
    signs,
    index_of: dict[Simplex, int],
) -> Fraction:
    """⟨α ∪ β, Σ ε σ⟩ with the front-face/back-face rule on sorted vertices."""
    total = Q0
    for idx, cell in enumerate(top_cells):
        front = cell[: k + 1]
        back = cell[k:]
        a = index_of.get(front)
        b = index_of.get(back)
        if a is None or b is None:
            continue
        total += signs[idx] * alpha[a, 0] * beta[b, 0]
    return total


def _inertia_report(
    degree: int, reps: np.ndarray, matrix: np.ndarray, model: bool
) -> PairingReport:
    raw_rank = rank(matrix)
    symmetrized = not mat_eq(matrix, matrix.T)
    if symmetrized:
        matrix = (matrix + matrix.T) * Fraction(1, 2)
    pos, neg, zero = congruence_signature(matrix)
    return PairingReport(
        degree=degree,
        representatives=reps,
        matrix=matrix,
        signature=(pos, neg, zero),
        nondegenerate=raw_rank == matrix.shape[0],
        symmetrized=symmetrized,
        model=model,
    )


def image_pairing(rp: RelAbsPair, degree: int | None = None) -> PairingReport:
    """Cup pairing on im(H^k(rel) → H^k(abs)) in the middle degree k.

    Needs an even-dimensional oriented manifold; the signature is the
    inertia of the matrix, meaningful when the dimension is 4m (the matrix
    is then exactly symmetric: the commutator defect is the coboundary of a
    relative cochain, which dies on the fundamental chain).
    """
    n = rp.dimension
    if n % 2 != 0:
        raise ValidationError("pairing needs an even-dimensional manifold")
    k = n // 2 if degree is None else degree
    if 2 * k != n:
        raise ValidationError("pairing lives in the middle degree only")
    minimal = rp.pair.minimal
    ker_rel = minimal.kernel(k)
    dead, _ = meet_join(rp.pair.ambient.range(k - 1), rp.pair.domains[k])
    comp, _ = orth(dead, standard_inner_product(rp.pair.ambient.dims[k]))
    reps_space, _ = meet_join(ker_rel, comp)
    reps = reps_space.basis
    if reps_space.dim != image_cohomology(rp.pair).dims[k]:
        raise AssertionError("representative count differs from the image dimension")
    index_of = {s: i for i, s in enumerate(rp.simplices[k])}
    size = reps.shape[1]
    matrix = rzeros(size, size)
    for a in range(size):
        for b in range(size):
            matrix[a, b] = _cup_evaluate(
                reps[:, a : a + 1],
                reps[:, b : b + 1],
                k,
                rp.top_cells,
                rp.orientation,
                index_of,
            )
    if n % 4 == 0:
        report = _inertia_report(k, reps, matrix, model=False)
        if report.symmetrized:
            raise AssertionError("middle pairing of a 4m-manifold must be symmetric")
        return report
    return PairingReport(
        degree=k,
        representatives=reps,
        matrix=matrix,
        signature=None,
        nondegenerate=rank(matrix) == size,
        symmetrized=False,
        model=False,
    )


# -- perverse signature -------------------------------------------------------


def ih_cocycle_representatives(
    x: StratifiedComplex, k: int, low: Perversity, high: Perversity
) -> np.ndarray:
    """Ambient R0 cochains spanning im(I^high H^k → I^low H^k).

    Columns are functionals on the degree-k stratified chain space that kill
    the boundaries of the larger intersection complex and whose evaluations
    against the smaller complex's cycles are linearly independent.
    """
    chains_up = intersection_chains(x, k + 1, high) if k < x.dimension else None
    if chains_up is None or chains_up.dim == 0:
        closed = full_subspace(x.chain_dim(k))
    else:
        image = mm(x.boundary_matrix(k + 1), chains_up.basis)
        closed = kernel_basis(image.T)
    cycles_low = _ih_cycles(x, k, low)
    evaluations = mm(cycles_low.basis.T, closed.basis)
    _, pivots = rref(evaluations)
    return closed.basis[:, pivots]


def perverse_signature(
    x: StratifiedComplex,
    p: Perversity | None = None,
    q: Perversity | None = None,
    weights=None,
) -> PairingReport:
    """Signature of the cup pairing on the middle-degree image of image_ih.

    With weights supplied the perversity is the metric one; q defaults to
    the dual of p.  Outputs on genuinely singular inputs are model
    signatures (the report's ``model`` flag): the simplicial cup-evaluate
    pairing is verified against classical cases, not derived in general.
    """
    if weights is not None:
        p = perversity_from_weights(x, dict(weights))
    if p is None:
        raise ValidationError("need a perversity or weights")
    if q is None:
        q = dual_perversity(x, p)
    elif dual_perversity(x, p) != q:
        raise ValidationError("q must be the dual perversity t - p")
    n = x.dimension
    if n % 4 != 0:
        raise ValidationError("perverse signature needs dimension 4m")
    k = n // 2
    if p.leq(q):
        low, high = p, q
    elif q.leq(p):
        low, high = q, p
    else:
        raise ValidationError("incomparable perversity pair")
    fundamental_cycle(x)  # raises on non-orientable input, checks ∂ = 0
    signs = coherent_orientation(x)
    reps = ih_cocycle_representatives(x, k, low, high)
    expected = image_ih(x, low, high).image_dims[k]
    if reps.shape[1] != expected:
        raise AssertionError("cocycle representatives differ from the image dimension")
    index_of = {s: i for i, s in enumerate(x.regular_simplices(k))}
    size = reps.shape[1]
    matrix = rzeros(size, size)
    for a in range(size):
        for b in range(size):
            matrix[a, b] = _cup_evaluate(
                reps[:, a : a + 1],
                reps[:, b : b + 1],
                k,
                x.top_cells,
                signs,
                index_of,
            )
    return _inertia_report(k, reps, matrix, model=bool(x.strata))
