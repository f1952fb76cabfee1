"""Independent oracle pipelines used to cross-check the main machinery.

Everything here recomputes a quantity along a deliberately different route:
plain simplicial homology from raw boundary matrices, cone/suspension
truncation formulas, inertia via Sturm root counting on the characteristic
polynomial, and induced-map ranks on explicit cohomology bases.  None of it
calls the intersection-homology or pair pipelines it is used to check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .rational import Q0, Q1, mm, rank, rzeros


def simplex_closure(cells) -> list[list[tuple[int, ...]]]:
    """All faces of the given cells, grouped by dimension, sorted."""
    top_dim = max(len(c) for c in cells) - 1
    by_dim: list[set] = [set() for _ in range(top_dim + 1)]
    for cell in cells:
        cell = tuple(sorted(cell))
        for k in range(1, len(cell) + 1):
            for face in combinations(cell, k):
                by_dim[k - 1].add(face)
    return [sorted(s) for s in by_dim]


def boundary_matrices(cells) -> list[np.ndarray]:
    """∂_i: C_i → C_{i-1} for the simplicial chain complex of the cells."""
    simplices = simplex_closure(cells)
    index = [{s: k for k, s in enumerate(level)} for level in simplices]
    mats = []
    for i in range(1, len(simplices)):
        m = rzeros(len(simplices[i - 1]), len(simplices[i]))
        for col, s in enumerate(simplices[i]):
            for j in range(len(s)):
                face = s[:j] + s[j + 1 :]
                m[index[i - 1][face], col] = Q1 if j % 2 == 0 else -Q1
        mats.append(m)
    return mats


def betti_numbers(cells) -> list[int]:
    """Rational Betti numbers of the simplicial complex spanned by the cells."""
    simplices = simplex_closure(cells)
    mats = boundary_matrices(cells)
    ranks = [rank(m) for m in mats]
    out = []
    for i in range(len(simplices)):
        z = len(simplices[i]) - (ranks[i - 1] if i >= 1 else 0)
        b = ranks[i] if i < len(mats) else 0
        out.append(z - b)
    return out


def suspension_ih_dims(base_betti: list[int], perversity_value: int) -> list[int]:
    """Intersection homology of a suspension via the cone-formula truncation.

    For a compact m-dimensional base X with no singular strata and both cone
    points carrying the perversity value p:  dims are H_i(X) below m - p,
    zero at m - p, and H_{i-1}(X) above.
    """
    m = len(base_betti) - 1
    cut = m - perversity_value
    out = []
    for i in range(m + 2):
        if i < cut:
            out.append(base_betti[i] if i <= m else 0)
        elif i == cut:
            out.append(0)
        else:
            out.append(base_betti[i - 1] if 0 <= i - 1 <= m else 0)
    return out


# -- exact inertia via Sturm sequences --------------------------------------


def _char_poly(sym: np.ndarray) -> list[Fraction]:
    """Characteristic polynomial coefficients (low degree first), Faddeev-LeVerrier."""
    n = sym.shape[0]
    coeffs = [Q0] * (n + 1)
    coeffs[n] = Q1
    eye = rzeros(n, n)
    for i in range(n):
        eye[i, i] = Q1
    a = np.array(sym, dtype=object)
    mk = eye
    for k in range(1, n + 1):
        am = mm(a, mk)
        c = -sum(am[i, i] for i in range(n)) / k
        coeffs[n - k] = c
        if k < n:
            mk = am + c * eye
    return coeffs


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Q0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and _poly_trim(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i in range(len(b)):
            a[shift + i] -= factor * b[i]
        a.pop()
    return q, _poly_trim(a)


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def _poly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _eval(p, x: Fraction) -> Fraction:
    out = Q0
    for c in reversed(p):
        out = out * x + c
    return out


def _sturm_chain(p):
    chain = [list(p), _poly_deriv(p)]
    while _poly_trim(chain[-1]):
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if _poly_trim(c)]


def _sign_changes(vals) -> int:
    signs = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _sturm_count(p, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of p in (lo, hi]."""
    chain = _sturm_chain(p)
    at_lo = _sign_changes([_eval(c, lo) for c in chain])
    at_hi = _sign_changes([_eval(c, hi) for c in chain])
    return at_lo - at_hi


def _root_bound(p) -> Fraction:
    lead = p[-1]
    return Q1 + max((abs(c / lead) for c in p[:-1]), default=Q0)


def sturm_inertia(sym: np.ndarray) -> tuple[int, int, int]:
    """Inertia of a symmetric matrix by counting char-poly roots by sign.

    Multiplicities come from the square-free gcd chain: a root of
    multiplicity m is a root of the first m polynomials in the chain.
    """
    n = sym.shape[0]
    if n == 0:
        return 0, 0, 0
    p = _poly_trim(_char_poly(sym))
    zero = 0
    while p and p[0] == 0:
        zero += 1
        p = p[1:]
    pos = neg = 0
    current = p
    while len(_poly_trim(current)) > 1:
        squarefree, _ = _poly_divmod(current, _poly_gcd(current, _poly_deriv(current)))
        bound = _root_bound(squarefree)
        pos += _sturm_count(squarefree, Q0, bound)
        neg += _sturm_count(squarefree, -bound, Q0)
        nxt = _poly_gcd(current, _poly_deriv(current))
        lead = nxt[-1]
        current = [c / lead for c in nxt]
    return pos, neg, zero


def induced_map_rank(
    cycles_small: np.ndarray,
    boundaries_small: np.ndarray,
    cycles_big: np.ndarray,
    boundaries_big: np.ndarray,
) -> int:
    """Rank of the map (cycles_s/bdries_s) → (cycles_b/bdries_b) induced by inclusion.

    All four arguments are column-basis matrices in one ambient space; the
    rank is dim(cycles_s + bdries_b) − dim(bdries_b), computed directly.
    """
    joined = np.concatenate([cycles_small.copy(), boundaries_big.copy()], axis=1)
    return rank(joined) - rank(boundaries_big)
