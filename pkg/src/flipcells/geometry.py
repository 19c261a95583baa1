"""Exact planar predicates on integer points.

All plabic-triangulation geometry in this package lives on integer
coordinates (sums of moment-curve values), so every predicate here is
integer arithmetic; no floats, no epsilons.  Where midpoints or centroids
are needed, callers pass coordinates scaled by 2, 3 or 6 to stay integral.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Sequence

Point = tuple[int, int]


def orient(o: Point, a: Point, b: Point) -> int:
    """Sign of the cross product (a-o) x (b-o): +1 left turn, -1 right, 0 collinear."""
    v = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    return (v > 0) - (v < 0)


def cross(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angular_cmp(u: Point, v: Point) -> int:
    """Compare direction vectors by CCW angle from the positive x axis."""
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    return (c < 0) - (c > 0)


def ccw_order(dirs: Sequence[Point]) -> list[int]:
    """Indices of `dirs` sorted counterclockwise.  Directions must be nonzero
    and pairwise non-equal in angle."""
    idx = list(range(len(dirs)))
    idx.sort(key=functools.cmp_to_key(lambda i, j: _angular_cmp(dirs[i], dirs[j])))
    for a, b in zip(idx, idx[1:]):
        if _angular_cmp(dirs[a], dirs[b]) == 0:
            raise ValueError("coincident directions in rotation system")
    return idx


def shoelace2(points: Sequence[Point]) -> int:
    """Twice the signed area of a closed polygonal walk (positive = CCW)."""
    total = 0
    m = len(points)
    for i in range(m):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % m]
        total += x0 * y1 - x1 * y0
    return total


def triangle_area2(a: Point, b: Point, c: Point) -> int:
    return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def winding_number(walk: Sequence[Point], z: Point) -> int:
    """Winding number of a closed walk around z; z must not lie on the walk.

    Counts signed crossings of the horizontal ray from z to +infinity.
    """
    w = 0
    m = len(walk)
    for i in range(m):
        p = walk[i]
        q = walk[(i + 1) % m]
        if p == q:
            continue
        if p[1] <= z[1] < q[1] and orient(p, q, z) < 0:
            w += 1
        elif q[1] <= z[1] < p[1] and orient(p, q, z) > 0:
            w -= 1
    return w


def on_segment(p: Point, q: Point, z: Point) -> bool:
    """True iff z lies on the closed segment pq."""
    if orient(p, q, z) != 0:
        return False
    return (
        min(p[0], q[0]) <= z[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= z[1] <= max(p[1], q[1])
    )


def point_on_walk(walk: Sequence[Point], z: Point) -> bool:
    m = len(walk)
    return any(on_segment(walk[i], walk[(i + 1) % m], z) for i in range(m))


def solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a (possibly overdetermined) exact linear system; None if inconsistent.

    For underdetermined consistent systems, free variables are set to 0.
    """
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, m):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        f = aug[row][col]
        aug[row] = [x / f for x in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                g = aug[r][col]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][ncols] != 0:
            return None
    out = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        out[col] = aug[r][ncols]
    return out
