"""Canonical triangulations used by the tests, the demos and the check suite.

All instances are small enough to verify by hand or by the plain-homology
pipeline: sphere boundaries, the 7-vertex torus, suspensions, surfaces with
boundary, the staircase product S^2 x S^2, and the 9-vertex CP^2.
"""

from __future__ import annotations

from itertools import combinations

from .stratified import StratifiedComplex, build_stratified

Simplex = tuple[int, ...]


def sphere_cells(dim: int) -> list[Simplex]:
    """Boundary of the (dim+1)-simplex: the minimal triangulation of S^dim."""
    verts = range(dim + 2)
    return [tuple(sorted(c)) for c in combinations(verts, dim + 1)]


def sphere(dim: int) -> StratifiedComplex:
    return build_stratified(dim + 2, sphere_cells(dim))


def torus_cells() -> list[Simplex]:
    """The 7-vertex (Csaszar) torus: triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7."""
    cells = []
    for i in range(7):
        cells.append(tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))))
        cells.append(tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))))
    return cells


def torus() -> StratifiedComplex:
    return build_stratified(7, torus_cells())


def suspension_cells(cells: list[Simplex], n_vertices: int) -> list[Simplex]:
    """Join with two new apex vertices n_vertices and n_vertices + 1."""
    out = []
    for c in cells:
        out.append(tuple(sorted(c + (n_vertices,))))
        out.append(tuple(sorted(c + (n_vertices + 1,))))
    return out


def suspension(
    cells: list[Simplex], n_vertices: int, apex_labels=("apex+", "apex-")
) -> StratifiedComplex:
    """Suspension as a stratified complex with the two apexes as point strata."""
    sus = suspension_cells(cells, n_vertices)
    labels = {
        (n_vertices,): apex_labels[0],
        (n_vertices + 1,): apex_labels[1],
    }
    strata = {apex_labels[0]: 0, apex_labels[1]: 0}
    return build_stratified(n_vertices + 2, sus, labels=labels, strata=strata)


def suspended_torus() -> StratifiedComplex:
    """ΣT²: 9 vertices, 28 tetrahedra, two codimension-3 cone points."""
    return suspension(torus_cells(), 7)


# -- manifolds with boundary (plain cell lists for the rel/abs machinery) ---


def disk_cells() -> list[Simplex]:
    return [(0, 1, 2)]


def cylinder_cells() -> list[Simplex]:
    """S^1 x [0,1] on 6 vertices: bottom circle 0,1,2 and top circle 3,4,5."""
    cells = []
    for i in range(3):
        j = (i + 1) % 3
        cells.append(tuple(sorted((i, j, j + 3))))
        cells.append(tuple(sorted((i, j + 3, i + 3))))
    return cells


def torus_minus_disk_cells() -> list[Simplex]:
    cells = torus_cells()
    cells.remove(tuple(sorted((0, 1, 3))))
    return cells


def genus2_cells() -> list[Simplex]:
    """Closed genus-2 surface: two 7-vertex tori glued along a removed triangle.

    Copy B's vertices are relabeled 7..13, then the boundary of the removed
    triangle (0,1,3) of copy A is identified with copy B's (7,8,10).
    """
    removed = tuple(sorted((0, 1, 3)))
    a_cells = [c for c in torus_cells() if c != removed]
    relabel = {}
    nxt = 7
    for v in range(7):
        image = {0: 0, 1: 1, 3: 3}.get(v)
        if image is None:
            relabel[v] = nxt
            nxt += 1
        else:
            relabel[v] = image
    b_cells = []
    for c in torus_cells():
        if c == removed:
            continue
        b_cells.append(tuple(sorted(relabel[v] for v in c)))
    return a_cells + b_cells


def genus2_minus_disk_cells() -> list[Simplex]:
    cells = genus2_cells()
    cells.remove(tuple(sorted((0, 2, 3))))
    return cells


# -- products ---------------------------------------------------------------


def product_cells(
    cells_a: list[Simplex], nv_a: int, cells_b: list[Simplex], nv_b: int
) -> tuple[list[Simplex], int]:
    """Staircase triangulation of a product of complexes.

    Vertex (u, v) becomes u * nv_b + v; a top cell of the product is a
    monotone staircase through the vertex grid of a pair of top cells.  One
    global vertex order on each factor keeps the pieces compatible.
    """

    def staircases(p: int, q: int):
        paths = []

        def walk(i, j, acc):
            if i == p and j == q:
                paths.append(list(acc))
                return
            if i < p:
                walk(i + 1, j, acc + [(i + 1, j)])
            if j < q:
                walk(i, j + 1, acc + [(i, j + 1)])

        walk(0, 0, [(0, 0)])
        return paths

    out = set()
    for a in cells_a:
        a = tuple(sorted(a))
        for b in cells_b:
            b = tuple(sorted(b))
            for path in staircases(len(a) - 1, len(b) - 1):
                cell = tuple(sorted(a[i] * nv_b + b[j] for i, j in path))
                out.add(cell)
    return sorted(out), nv_a * nv_b


def s2_times_s2() -> StratifiedComplex:
    cells, nv = product_cells(sphere_cells(2), 4, sphere_cells(2), 4)
    return build_stratified(nv, cells)


# -- the 9-vertex complex projective plane -----------------------------------

CP2_FACETS: tuple[Simplex, ...] = ()  # filled in below


def cp2() -> StratifiedComplex:
    if not CP2_FACETS:
        raise RuntimeError("CP^2 facet table missing")
    return build_stratified(9, list(CP2_FACETS))
