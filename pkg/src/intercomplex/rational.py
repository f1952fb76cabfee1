"""Exact rational linear algebra.

Matrices are numpy object arrays filled with ``fractions.Fraction``; every
operation is exact, so equality of results is bit-exact equality of reduced
fractions.  Subspaces are stored in a canonical reduced column echelon form,
which makes subspace equality plain array equality.  Zero-dimensional
matrices and subspaces are first-class throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Q0 = Fraction(0)
Q1 = Fraction(1)


def rmat(rows: Sequence[Sequence] | np.ndarray) -> np.ndarray:
    """Build an exact matrix from nested data (ints, strings "p/q", Fractions)."""
    if isinstance(rows, np.ndarray) and rows.dtype == object:
        rows = rows.tolist()
    data = [[Fraction(x) for x in row] for row in rows]
    ncols = {len(row) for row in data}
    if len(ncols) > 1:
        raise ValueError("ragged rows in matrix literal")
    out = np.empty((len(data), ncols.pop() if ncols else 0), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    out.setflags(write=False)
    return out


def rzeros(nrows: int, ncols: int) -> np.ndarray:
    out = np.empty((nrows, ncols), dtype=object)
    out[...] = Q0
    return out


def reye(n: int) -> np.ndarray:
    out = rzeros(n, n)
    for i in range(n):
        out[i, i] = Q1
    return out


def _mm2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return rzeros(a.shape[0], b.shape[1])
    if a.shape[0] * a.shape[1] <= 4096 and b.shape[0] * b.shape[1] <= 4096:
        return np.dot(a, b)
    # sparse-aware accumulation: skip zero entries of both factors
    b_rows = [
        [(k, v) for k, v in enumerate(b[j]) if v != 0] for j in range(b.shape[0])
    ]
    out = rzeros(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        row = a[i]
        acc = out[i]
        for j in range(a.shape[1]):
            av = row[j]
            if av == 0:
                continue
            for k, bv in b_rows[j]:
                acc[k] = acc[k] + av * bv
    return out


def mm(*mats: np.ndarray) -> np.ndarray:
    """Exact matrix product; contractions over a zero dimension give zeros."""
    out = mats[0]
    for b in mats[1:]:
        out = _mm2(out, b)
    return out


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _int_row_dicts(a: np.ndarray) -> list[dict[int, int]]:
    """Nonzero entries per row, denominators cleared per row (sparse form)."""
    rows = []
    for row in a:
        den = 1
        for x in row:
            d = x.denominator if isinstance(x, Fraction) else 1
            den = den * d // math.gcd(den, d)
        rows.append(
            {j: int(x * den) for j, x in enumerate(row) if x != 0}
            if den != 1
            else {j: int(x) for j, x in enumerate(row) if x != 0}
        )
    return rows


def _combine(piv: int, row: dict, f: int, prow: dict) -> dict:
    """gcd-reduced sparse row piv·row - f·prow."""
    out = dict()
    g = 0
    for j, v in row.items():
        w = piv * v - f * prow.get(j, 0)
        if w:
            out[j] = w
            if g != 1:
                g = math.gcd(g, w)
    for j, v in prow.items():
        if j not in row:
            w = -f * v
            out[j] = w
            if g != 1:
                g = math.gcd(g, w)
    if g > 1:
        for j in out:
            out[j] //= g
    return out


def _eliminate(a: np.ndarray, reduced: bool) -> tuple[list[dict[int, int]], list[int]]:
    nrows, ncols = a.shape
    work = _int_row_dicts(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i].get(c)), None)
        if pivot is None:
            continue
        if pivot != r:
            work[r], work[pivot] = work[pivot], work[r]
        prow = work[r]
        piv = prow[c]
        lower = range(r + 1, nrows) if not reduced else range(nrows)
        for i in lower:
            if i == r:
                continue
            f = work[i].get(c, 0)
            if f:
                work[i] = _combine(piv, work[i], f, prow)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work, pivots


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (copy) and the list of pivot columns.

    Fraction-free Gauss-Jordan on sparse integer rows (cross-multiplication
    with per-row gcd squeezes), divided through by the pivots at the end.
    """
    nrows, ncols = a.shape
    work, pivots = _eliminate(a, reduced=True)
    out = rzeros(nrows, ncols)
    for i, c in enumerate(pivots):
        piv = work[i][c]
        for j, v in work[i].items():
            out[i, j] = Fraction(v, piv)
    return out, pivots


def rank(a: np.ndarray) -> int:
    """Exact rank via fraction-free forward elimination (no reduced output)."""
    return len(_eliminate(a, reduced=False)[1])


def invert(a: np.ndarray) -> np.ndarray:
    """Exact inverse of a square matrix; raises on singular input."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.array(a, dtype=object), reye(n)], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return red[:, n:]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One exact solution of a·x = b (columnwise); raises if inconsistent."""
    nrows, ncols = a.shape
    k = b.shape[1]
    aug = np.concatenate([np.array(a, dtype=object), np.array(b, dtype=object)], axis=1)
    red, pivots = rref(aug)
    if any(p >= ncols for p in pivots):
        raise ValueError("inconsistent linear system")
    x = rzeros(ncols, k)
    for r, c in enumerate(pivots):
        x[c, :] = red[r, ncols:]
    return x


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim with a canonical column basis.

    The basis columns are in reduced column echelon form (the transpose is an
    RREF matrix), so two Subspace values are equal iff their arrays coincide.
    """

    ambient_dim: int
    basis: np.ndarray = field(compare=False)

    def __post_init__(self):
        if self.basis.shape[0] != self.ambient_dim:
            raise ValueError("basis rows must match ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and mat_eq(self.basis, other.basis)
        )

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if other.dim == 0:
            return True
        stacked = np.concatenate([self.basis, other.basis], axis=1)
        return rank(stacked) == self.dim

    def contains_vectors(self, vecs: np.ndarray) -> bool:
        return self.contains(span(vecs))


def span(columns: np.ndarray) -> Subspace:
    """The subspace spanned by the columns of a matrix, canonicalized."""
    red, pivots = rref(columns.T)
    basis = red[: len(pivots), :].T.copy()
    basis.setflags(write=False)
    return Subspace(columns.shape[0], basis)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, rzeros(ambient_dim, 0))


def full_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, reye(ambient_dim))


def kernel_basis(m: np.ndarray) -> Subspace:
    """The exact solution space of m·v = 0, as a canonical Subspace."""
    nrows, ncols = m.shape
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = rzeros(ncols, len(free))
    for j, c in enumerate(free):
        basis[c, j] = Q1
        for r, p in enumerate(pivots):
            basis[p, j] = -red[r, c]
    return span(basis)


def image_basis(m: np.ndarray) -> Subspace:
    """The column span of m, canonical."""
    return span(m)


def meet_join(a: Subspace, b: Subspace) -> tuple[Subspace, Subspace]:
    """Intersection and sum of two subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    joined = np.concatenate([a.basis, b.basis], axis=1)
    join = span(joined)
    # Zassenhaus-style: solutions of A·x = B·y give the intersection A·x.
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim), join
    stacked = np.concatenate([a.basis, -b.basis], axis=1)
    sols = kernel_basis(stacked)
    meet = span(mm(a.basis, sols.basis[: a.dim, :]))
    return meet, join


def meet_many(spaces: Sequence[Subspace]) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        out, _ = meet_join(out, s)
    return out


def annihilator_rows(a: Subspace) -> np.ndarray:
    """A matrix whose kernel is exactly the subspace (its dual description)."""
    return kernel_basis(a.basis.T).basis.T


def preimage(m: np.ndarray, target: Subspace) -> Subspace:
    """{v : m·v ∈ target}, exact."""
    if m.shape[0] != target.ambient_dim:
        raise ValueError("codomain mismatch")
    eqs = annihilator_rows(target)
    return kernel_basis(mm(eqs, m)) if eqs.shape[0] else full_subspace(m.shape[1])


def ldlt_pivots(s: np.ndarray) -> list[Fraction] | None:
    """Pivots of the LDLᵀ factorization without pivoting; None if it breaks down."""
    n = s.shape[0]
    m = np.array(s, dtype=object)
    pivots = []
    for k in range(n):
        piv = m[k, k]
        if piv == 0:
            return None
        pivots.append(piv)
        for i in range(k + 1, n):
            if m[i, k] != 0:
                factor = m[i, k] / piv
                m[i, k:] = m[i, k:] - factor * m[k, k:]
    return pivots


@dataclass(frozen=True)
class InnerProduct:
    """A positive definite symmetric Gram matrix, certified exactly via LDLᵀ."""

    gram: np.ndarray = field(compare=False)

    def __post_init__(self):
        g = self.gram
        if g.shape[0] != g.shape[1]:
            raise ValueError("gram matrix must be square")
        if not mat_eq(g, g.T):
            raise ValueError("gram matrix must be symmetric")
        pivots = ldlt_pivots(g)
        if pivots is None or any(p <= 0 for p in pivots):
            raise ValueError("gram matrix must be positive definite")

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, InnerProduct) and mat_eq(self.gram, other.gram)

    def pair(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return mm(u.T, self.gram, v)


def standard_inner_product(n: int) -> InnerProduct:
    return InnerProduct(reye(n))


def orth(a: Subspace, ip: InnerProduct) -> tuple[Subspace, np.ndarray]:
    """Gram-orthogonal complement of a subspace and the projector onto it.

    The projector P is idempotent, gram-self-adjoint (G·P = Pᵀ·G), has
    image a and kernel the returned complement.
    """
    if a.ambient_dim != ip.dim:
        raise ValueError("ambient dimension mismatch")
    complement = kernel_basis(mm(a.basis.T, ip.gram))
    if a.dim == 0:
        return complement, rzeros(a.ambient_dim, a.ambient_dim)
    b = a.basis
    gram_on_a = mm(b.T, ip.gram, b)
    projector = mm(b, invert(gram_on_a), b.T, ip.gram)
    return complement, projector


def orth_complement_in(sub: Subspace, whole: Subspace, ip: InnerProduct) -> Subspace:
    """Gram-orthogonal complement of ``sub`` inside ``whole`` (sub ⊆ whole)."""
    comp, _ = orth(sub, ip)
    meet, _ = meet_join(comp, whole)
    return meet


def is_direct_sum(total: Subspace, parts: Sequence[Subspace]) -> bool:
    """Exact test that the parts are independent and span the given total."""
    nonzero = [p for p in parts if p.dim > 0]
    if sum(p.dim for p in nonzero) != total.dim:
        return False
    if not nonzero:
        return total.dim == 0
    joined = span(np.concatenate([p.basis for p in nonzero], axis=1))
    return joined == total


def congruence_signature(s: np.ndarray) -> tuple[int, int, int]:
    """Inertia (pos, neg, zero) of a symmetric matrix by exact congruence.

    Symmetric row/column operations diagonalize s.  A vanished diagonal pivot
    is repaired by swapping in a later nonzero diagonal entry, or, when the
    whole remaining diagonal is zero, by adding a row and matching column
    (which then produces the pivot 2·m[k,j] ≠ 0).
    """
    n = s.shape[0]
    if s.shape != (n, n) or not mat_eq(s, s.T):
        raise ValueError("signature of a non-symmetric matrix")
    m = np.array(s, dtype=object)
    pos = neg = 0
    for k in range(n):
        if m[k, k] == 0:
            j = next((j for j in range(k + 1, n) if m[j, j] != 0), None)
            if j is not None:
                m[[k, j], :] = m[[j, k], :]
                m[:, [k, j]] = m[:, [j, k]]
            else:
                j = next((j for j in range(k + 1, n) if m[k, j] != 0), None)
                if j is None:
                    continue
                m[k, :] = m[k, :] + m[j, :]
                m[:, k] = m[:, k] + m[:, j]
        piv = m[k, k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if m[i, k] != 0:
                factor = m[i, k] / piv
                m[i, :] = m[i, :] - factor * m[k, :]
                m[:, i] = m[:, i] - factor * m[:, k]
    return pos, neg, n - pos - neg
