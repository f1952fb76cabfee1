"""The constructive intermediate complex of a pair D ⊆ L.

Executes the graph-inner-product proof verbatim at finite dimension: split
off Ker L and Ker D, pull the next domain back through L, carve the new
piece N out of the pullback, and restrict L to B = 𝒟(D) ⊕ N.  The resulting
complex P satisfies D ⊆ P ⊆ L, Ker P = Ker D, ran P = ran L ∩ 𝒟(D₊), and
its cohomology is the image cohomology of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import FiniteComplex, adjoint, cohomology
from .pairs import ComplexPair, image_cohomology
from .rational import (
    InnerProduct,
    Subspace,
    full_subspace,
    image_basis,
    is_zero,
    kernel_basis,
    meet_join,
    mm,
    orth,
    preimage,
    rank,
    rzeros,
    solve,
    span,
)


@dataclass(frozen=True)
class DegreeTrace:
    """All intermediate subspaces of the construction in one degree."""

    graph_gram: InnerProduct
    ker_l: Subspace
    ker_d: Subspace
    graph_complement_ker_l: Subspace  # V_i of the proof
    a: Subspace                      # graph complement of Ker D in 𝒟(D)
    pullback_domain: Subspace        # {α : L α ∈ 𝒟(D_{i+1})}
    w: Subspace                      # pullback ∩ V_i
    ran_pi2: Subspace
    n: Subspace
    b: Subspace
    shortcut: bool


@dataclass(frozen=True)
class IntermediateComplex:
    pair: ComplexPair
    complex: FiniteComplex = field(compare=False)
    trace: tuple[DegreeTrace, ...] = field(compare=False)

    @property
    def domains(self) -> tuple[Subspace, ...]:
        return self.complex.domains


def graph_inner_product(p: ComplexPair, i: int) -> InnerProduct:
    """⟨u,v⟩ + ⟨L_i u, L_i v⟩ on degree i (plain gram in top degree)."""
    g = p.ambient.grams[i].gram
    if i < p.degree:
        l = p.ambient.diffs[i]
        g = g + mm(l.T, p.ambient.grams[i + 1].gram, l)
    return InnerProduct(g)


def _graph_complement_in(sub: Subspace, whole: Subspace, gg: InnerProduct) -> Subspace:
    comp, _ = orth(sub, gg)
    meet, _ = meet_join(comp, whole)
    return meet


def build_intermediate(p: ComplexPair) -> IntermediateComplex:
    """Run the construction degree by degree and return P with its trace."""
    n = p.degree
    traces = []
    domains_b: list[Subspace] = []
    for i in range(n + 1):
        h_dim = p.ambient.dims[i]
        gg = graph_inner_product(p, i)
        ker_l = kernel_basis(p.ambient.diff(i)) if i < n else full_subspace(h_dim)
        dom_d = p.domains[i]
        ker_d, _ = meet_join(dom_d, ker_l)
        v_i = _graph_complement_in(ker_l, full_subspace(h_dim), gg)
        a_i = _graph_complement_in(ker_d, dom_d, gg)
        if i < n:
            pullback = preimage(p.ambient.diffs[i], p.domains[i + 1])
        else:
            pullback = full_subspace(h_dim)
        w_i, _ = meet_join(pullback, v_i)
        _, proj_v = orth(v_i, gg)
        ran_pi2 = image_basis(mm(proj_v, a_i.basis))
        shortcut = ker_d == ker_l
        if shortcut:
            b_i = pullback
            n_i = _graph_complement_in(dom_d, b_i, gg)
        else:
            n_i = _graph_complement_in(ran_pi2, w_i, gg)
            _, b_i = meet_join(dom_d, n_i)
        traces.append(
            DegreeTrace(
                graph_gram=gg,
                ker_l=ker_l,
                ker_d=ker_d,
                graph_complement_ker_l=v_i,
                a=a_i,
                pullback_domain=pullback,
                w=w_i,
                ran_pi2=ran_pi2,
                n=n_i,
                b=b_i,
                shortcut=shortcut,
            )
        )
        domains_b.append(b_i)
    built = FiniteComplex(
        p.ambient.dims, p.ambient.grams, p.ambient.diffs, tuple(domains_b)
    )
    ic = IntermediateComplex(pair=p, complex=built, trace=tuple(traces))
    problem = check_invariants(ic)
    if problem is not None:
        raise AssertionError(f"intermediate construction broke its contract: {problem}")
    return ic


def check_invariants(ic: IntermediateComplex) -> str | None:
    """The four contract invariants, exactly; None when all hold."""
    p = ic.pair
    n = p.degree
    for i in range(n + 1):
        b_i = ic.domains[i]
        if not b_i.contains(p.domains[i]):
            return f"𝒟(D_{i}) ⊄ B_{i}"
        ker_p = ic.complex.kernel(i)
        ker_d = p.minimal.kernel(i)
        if ker_p != ker_d:
            return f"Ker P_{i} ≠ Ker D_{i}"
        if i < n:
            ran_p = ic.complex.range(i)
            expected, _ = meet_join(p.ambient.range(i), p.domains[i + 1])
            if ran_p != expected:
                return f"ran P_{i} ≠ ran L_{i} ∩ 𝒟(D_{i + 1})"
            composed = mm(p.ambient.diff(i + 1), p.ambient.diffs[i], b_i.basis)
            if not is_zero(composed):
                return f"P∘P ≠ 0 on B_{i}"
    return None


def verify_against_oracle(ic: IntermediateComplex) -> int | None:
    """First degree where dim H^i(P) differs from the image dimension, else None.

    The two sides come from independent pipelines (cohomology of the built
    complex vs the quotient formula on the pair), so a mismatch is a bug,
    never an acceptable outcome.
    """
    built = cohomology(ic.complex).dims
    image = image_cohomology(ic.pair).dims
    for i, (a, b) in enumerate(zip(built, image)):
        if a != b:
            return i
    return None


def _coords_in(space: Subspace, vectors: np.ndarray) -> np.ndarray:
    """Coordinates of the given columns with respect to the subspace basis."""
    if space.dim == 0:
        if not is_zero(vectors):
            raise ValueError("vectors outside the zero subspace")
        return rzeros(0, vectors.shape[1])
    return solve(space.basis, vectors)


def laplacian_m(ic: IntermediateComplex, i: int) -> tuple[np.ndarray, Subspace]:
    """Δ_𝔪,i = P_i*∘P_i + P_{i-1}∘P_{i-1}* with domain B_i, plus its kernel.

    Adjoints take the minimal-norm representative inside the B-domains; the
    kernel equals ℋ^i(P), whose dimension is the image-cohomology dimension.
    """
    c = ic.complex
    if not 0 <= i <= c.degree:
        raise IndexError(f"degree {i} out of range")
    dim = c.dims[i]
    up = rzeros(dim, dim)
    down = rzeros(dim, dim)
    if i < c.degree:
        up = mm(adjoint(c, i), c.diffs[i])
    if i > 0:
        down = mm(c.diffs[i - 1], adjoint(c, i - 1))
    delta = up + down
    kernel, _ = meet_join(kernel_basis(delta), ic.domains[i])
    return delta, kernel


def index_even(ic: IntermediateComplex) -> int:
    """Index of (P + P*) from even onto odd B-domains; equals Σ(-1)^i dim H^i(P)."""
    c = ic.complex
    n = c.degree
    even = [i for i in range(n + 1) if i % 2 == 0]
    odd = [i for i in range(n + 1) if i % 2 == 1]
    odd_pos = {i: k for k, i in enumerate(odd)}
    row_dims = [ic.domains[i].dim for i in odd]
    col_dims = [ic.domains[i].dim for i in even]
    total = rzeros(sum(row_dims), sum(col_dims))
    row_offsets = [0]
    for d in row_dims:
        row_offsets.append(row_offsets[-1] + d)
    col_off = 0
    for i in even:
        b = ic.domains[i].basis
        if i < n:
            image = mm(c.diffs[i], b)
            coords = _coords_in(ic.domains[i + 1], image)
            r0 = row_offsets[odd_pos[i + 1]]
            total[r0 : r0 + coords.shape[0], col_off : col_off + b.shape[1]] += coords
        if i > 0:
            image = mm(adjoint(c, i - 1), b)
            coords = _coords_in(ic.domains[i - 1], image)
            r0 = row_offsets[odd_pos[i - 1]]
            total[r0 : r0 + coords.shape[0], col_off : col_off + b.shape[1]] += coords
        col_off += b.shape[1]
    ker_dim = sum(col_dims) - rank(total)
    coker_dim = sum(row_dims) - rank(total)
    return ker_dim - coker_dim
