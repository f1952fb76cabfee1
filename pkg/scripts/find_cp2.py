"""Search for the 9-vertex triangulation of CP^2.

Target: 36 five-element facets on 9 vertices such that every 4-set is
covered 0 or 2 times (closed pseudomanifold) and every 3-set is covered
(3-neighborly).  By Kuehnel-Lassmann uniqueness any hit is CP^2_9.
"""

import sys
from itertools import combinations

N = 9
VERTS = range(N)


def search():
    count4 = {}
    facets = []

    def cover(f, delta):
        for quad in combinations(f, 4):
            count4[quad] = count4.get(quad, 0) + delta

    def can_add(f):
        for quad in combinations(f, 4):
            if count4.get(quad, 0) >= 2:
                return False
        return True

    def smallest_open():
        best = None
        for quad, c in count4.items():
            if c == 1 and (best is None or quad < best):
                best = quad
        return best

    sols = []

    def dfs():
        if len(sols) >= 1:
            return
        quad = smallest_open()
        if quad is None:
            if len(facets) == 36:
                triples = set()
                for f in facets:
                    triples.update(combinations(f, 3))
                if len(triples) == 84:
                    sols.append(list(facets))
            return
        if len(facets) >= 36:
            return
        for v in VERTS:
            if v in quad:
                continue
            f = tuple(sorted(quad + (v,)))
            if f in facets or not can_add(f):
                continue
            facets.append(f)
            cover(f, 1)
            dfs()
            cover(f, -1)
            facets.pop()

    first = (0, 1, 2, 3, 4)
    facets.append(first)
    cover(first, 1)
    # vertices 5..8 are interchangeable before the second facet is placed
    second = (0, 1, 2, 3, 5)
    facets.append(second)
    cover(second, 1)
    dfs()
    return sols


if __name__ == "__main__":
    sols = search()
    if not sols:
        print("NO SOLUTION")
        sys.exit(1)
    for f in sols[0]:
        print(" ".join(map(str, f)))
