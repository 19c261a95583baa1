"""Plabic triangulations, plabic graphs, moves, and level cross-sections.

The canonical representation of a trivalent plabic graph is its plabic
triangulation: vertex labels are k-subsets of [n] (stored as bitmasks),
placed at the exact integer point (sum t_i, sum t_i^2) over the label, with
the boundary given by the Grassmann-necklace walk.  Triangle colors are
derived from labels alone: a triple with a common (k-1)-intersection is
white, one with a (k+1)-union is black.

The dual plabic graph, strand permutations, the moves (white/black
trivalent flips and the square relabeling), and the UP/DOWN layer machinery
all operate on this representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import combinat
from .combinat import BLACK, WHITE, DecoratedPermutation, GrassmannNecklace, LabelCollection
from .errors import (
    ArgumentError,
    MalformedGraphError,
    PreconditionError,
    ResourceCapExceeded,
    ValidationError,
)
from .flipgraph import FlipGraph
from .geometry import ccw_order, orient, shoelace2, triangle_area2, winding_number
from .zonotope import SignedSubset, Tiling, ZonotopeSpec, elems_of, mask_of

DEFAULT_VERTEX_CAP = 200_000


@lru_cache(maxsize=None)
def pos(mask: int) -> tuple[int, int]:
    """Exact planar position of a label: (sum of t_i, sum of t_i^2), t_i = i."""
    y = z = 0
    m = mask
    while m:
        low = m & -m
        i = low.bit_length()
        y += i
        z += i * i
        m ^= low
    return (y, z)


def interval_mask(n: int, start: int, length: int) -> int:
    """Cyclic interval {start, ..., start+length-1} of [n] as a mask."""
    m = 0
    for off in range(length):
        m |= 1 << ((start - 1 + off) % n)
    return m


def cyclic_walk(n: int, k: int) -> tuple[int, ...]:
    """Boundary walk of the full cross-section: necklace of pi(n, k)."""
    return tuple(interval_mask(n, i, k) for i in range(1, n + 1))


def triangle_color(tri: tuple[int, int, int]) -> str:
    a, b, c = tri
    k = bin(a).count("1")
    if bin(a & b & c).count("1") == k - 1:
        return WHITE
    if bin(a | b | c).count("1") == k + 1:
        return BLACK
    raise ValidationError("label triple %s is neither white nor black" % (tri,))


def _norm_tri(labels) -> tuple[int, int, int]:
    t = tuple(sorted(labels))
    if len(set(t)) != 3:
        raise ValidationError("triangle needs three distinct labels")
    return t


@dataclass(frozen=True)
class PlabicTriangulation:
    """A labeled 2-colored triangulation of the region inside a necklace walk."""

    n: int
    k: int
    triangles: tuple[tuple[int, int, int], ...]
    boundary: tuple[int, ...]

    def __post_init__(self):
        if len(self.boundary) != self.n:
            raise ValidationError("boundary walk must have n entries")
        if tuple(sorted(self.triangles)) != self.triangles:
            raise ValidationError("triangles must be stored sorted")

    @staticmethod
    def make(n: int, k: int, triangles, boundary) -> "PlabicTriangulation":
        tris = tuple(sorted(_norm_tri(t) for t in triangles))
        return PlabicTriangulation(n, k, tris, tuple(boundary))

    def key(self) -> tuple[tuple[int, int, int], ...]:
        return self.triangles

    def labels(self) -> frozenset[int]:
        out = set(self.boundary)
        for t in self.triangles:
            out.update(t)
        return frozenset(out)

    def interior_labels(self) -> frozenset[int]:
        return self.labels() - set(self.boundary)

    def color(self, tri: tuple[int, int, int]) -> str:
        return triangle_color(tri)

    def necklace(self) -> GrassmannNecklace:
        return GrassmannNecklace.make(self.n, [elems_of(m) for m in self.boundary])

    def walk_steps(self) -> list[tuple[int, int, int]]:
        """Non-degenerate boundary steps (i, from_label, to_label), 1-based i."""
        out = []
        for i in range(1, self.n + 1):
            a = self.boundary[i - 1]
            b = self.boundary[i % self.n]
            if a != b:
                out.append((i, a, b))
        return out

    def walked_segments(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for _, a, b in self.walk_steps()}

    def boundary_area2(self) -> int:
        return abs(shoelace2([pos(m) for m in self.boundary]))

    def triangles_area2(self) -> int:
        return sum(triangle_area2(pos(a), pos(b), pos(c)) for a, b, c in self.triangles)

    def check(self) -> None:
        """Structural invariants: label sizes, colors, weak separation, area."""
        for lab in self.labels():
            if bin(lab).count("1") != self.k or lab >> self.n:
                raise ValidationError("label %s is not a k-subset of [n]" % (elems_of(lab),))
        for t in self.triangles:
            triangle_color(t)
        labs = sorted(self.labels())
        for a, b in itertools.combinations(labs, 2):
            if not combinat.is_weakly_separated_mask(a, b):
                raise ValidationError(
                    "labels %s and %s are not weakly separated"
                    % (elems_of(a), elems_of(b))
                )
        if self.triangles_area2() != self.boundary_area2():
            raise ValidationError("triangles do not tile the boundary region")

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "n": self.n,
            "k": self.k,
            "triangles": [
                {"labels": [list(elems_of(l)) for l in t], "color": triangle_color(t)}
                for t in self.triangles
            ],
            "boundary": [list(elems_of(m)) for m in self.boundary],
            "positions": {
                ",".join(map(str, elems_of(l))): list(pos(l)) for l in sorted(self.labels())
            },
        }

    @staticmethod
    def from_json(data: dict) -> "PlabicTriangulation":
        tris = [tuple(mask_of(l) for l in t["labels"]) for t in data["triangles"]]
        boundary = [mask_of(b) for b in data["boundary"]]
        return PlabicTriangulation.make(data["n"], data["k"], tris, boundary)


# ---------------------------------------------------------------------------
# cross-sections of Z(n, 3) tilings


def cross_section(tiling: Tiling, k: int) -> PlabicTriangulation:
    """The level-k plabic triangulation of a fine zonotopal tiling of Z(n, 3).

    Tiles with |X+| = k-1 are cut near their bottom vertex and contribute a
    white triangle; tiles with |X+| = k-2 are cut near the top and contribute
    a black one.
    """
    spec = tiling.spec
    if spec.d != 3:
        raise ArgumentError("cross sections are defined for d = 3")
    if not 1 <= k <= spec.n - 1:
        raise ArgumentError("level k must lie in [1, n-1]")
    tris = []
    for zero, plus in zip(spec.dsubsets, tiling.plus):
        np_ = bin(plus).count("1")
        bits = [1 << (i - 1) for i in elems_of(zero)]
        if np_ == k - 1:
            tris.append(tuple(sorted(plus | b for b in bits)))
        elif np_ == k - 2:
            union = plus | zero
            tris.append(tuple(sorted(union & ~b for b in bits)))
    return PlabicTriangulation.make(spec.n, k, tris, cyclic_walk(spec.n, k))


# ---------------------------------------------------------------------------
# plabic graphs (dual side)


@dataclass(frozen=True)
class PlabicGraph:
    """A planar bicolored graph with boundary legs and a rotation system.

    Internal vertices are indexed 0..m-1 with colors; edge ends are either
    ("v", idx) or ("b", i) with i in [1, n].  `rotations[v]` lists darts
    (edge_id, end_index) in counterclockwise order around v.
    """

    n: int
    colors: tuple[str, ...]
    edges: tuple[tuple[tuple, tuple], ...]
    rotations: tuple[tuple[tuple[int, int], ...], ...]

    def boundary_edge(self, i: int) -> int:
        hits = [e for e, (a, b) in enumerate(self.edges) if a == ("b", i) or b == ("b", i)]
        if len(hits) != 1:
            raise MalformedGraphError("boundary vertex b_%d must have exactly one edge" % i)
        return hits[0]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "n": self.n,
            "colors": list(self.colors),
            "edges": [[list(a), list(b)] for a, b in self.edges],
            "rotations": [[list(d) for d in rot] for rot in self.rotations],
        }


def dual_graph(sigma: PlabicTriangulation) -> PlabicGraph:
    """Planar dual of a plabic triangulation, with boundary legs b_1..b_n.

    b_i attaches across the boundary step I_i -> I_{i+1}; a step with no
    triangle on its inner (left) side pairs up with the reverse traversal of
    the same segment and yields a direct b_i -- b_j edge; a stalled step
    (fixed point) yields an isolated vertex colored by the necklace.
    """
    tris = list(sigma.triangles)
    colors: list[str] = [triangle_color(t) for t in tris]
    seg_map: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ti, t in enumerate(tris):
        for a, b in itertools.combinations(t, 2):
            third = next(x for x in t if x != a and x != b)
            seg_map.setdefault((min(a, b), max(a, b)), []).append((ti, third))
    walked = sigma.walked_segments()

    edges: list[tuple[tuple, tuple]] = []
    # interior edges between triangles
    for seg, lst in sorted(seg_map.items()):
        if seg in walked:
            continue
        if len(lst) == 1:
            raise ValidationError(
                "interior segment %s borders a single triangle" % (seg,)
            )
        if len(lst) != 2:
            raise ValidationError("segment %s borders %d triangles" % (seg, len(lst)))
        (t1, th1), (t2, th2) = lst
        p, q = pos(seg[0]), pos(seg[1])
        if orient(p, q, pos(th1)) * orient(p, q, pos(th2)) >= 0:
            raise ValidationError("triangles overlap across segment %s" % (seg,))
        edges.append((("v", t1), ("v", t2)))

    # boundary legs
    steps = sigma.walk_steps()
    step_by_pair: dict[tuple[int, int], list[int]] = {}
    for i, a, b in steps:
        step_by_pair.setdefault((a, b), []).append(i)
    done_bb = set()
    for i, a, b in steps:
        candidates = [
            (ti, third)
            for (ti, third) in seg_map.get((min(a, b), max(a, b)), [])
            if orient(pos(a), pos(b), pos(third)) > 0
        ]
        if len(candidates) > 1:
            raise ValidationError("boundary step %d has two inner triangles" % i)
        if candidates:
            edges.append((("v", candidates[0][0]), ("b", i)))
            continue
        partners = step_by_pair.get((b, a), [])
        if len(partners) != 1:
            raise ValidationError("hanging boundary step %d has no reverse partner" % i)
        j = partners[0]
        if (min(i, j), max(i, j)) not in done_bb:
            done_bb.add((min(i, j), max(i, j)))
            edges.append((("b", i), ("b", j)))

    # isolated vertices for fixed points
    for i in range(1, sigma.n + 1):
        a = sigma.boundary[i - 1]
        b = sigma.boundary[i % sigma.n]
        if a == b:
            v = len(colors)
            colors.append(BLACK if a >> (i - 1) & 1 else WHITE)
            edges.append((("v", v), ("b", i)))

    # rotation systems for triangle-dual vertices; lone vertices have one dart
    rotations: list[tuple[tuple[int, int], ...]] = []
    incident: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(colors))}
    for e, (a, b) in enumerate(edges):
        if a[0] == "v":
            incident[a[1]].append((e, 0))
        if b[0] == "v":
            incident[b[1]].append((e, 1))
    for v in range(len(colors)):
        darts = incident[v]
        if v >= len(tris):
            rotations.append(tuple(darts))
            continue
        tri = tris[v]
        dirs = []
        for e, end in darts:
            other = edges[e][1 - end]
            seg = _edge_segment(sigma, tri, edges[e], other)
            p, q = seg
            third = next(x for x in tri if x != p and x != q)
            a_, b_, c_ = pos(p), pos(q), pos(third)
            dirs.append((a_[0] + b_[0] - 2 * c_[0], a_[1] + b_[1] - 2 * c_[1]))
        order = ccw_order(dirs)
        rotations.append(tuple(darts[i] for i in order))
    return PlabicGraph(sigma.n, tuple(colors), tuple(edges), tuple(rotations))


def _edge_segment(sigma: PlabicTriangulation, tri, edge, other):
    """The label segment an incident dual edge crosses."""
    if other[0] == "v":
        shared = sorted(set(tri) & set(sigma.triangles[other[1]]))
        if len(shared) != 2:
            raise ValidationError("adjacent triangles must share two labels")
        return shared[0], shared[1]
    i = other[1]
    a = sigma.boundary[i - 1]
    b = sigma.boundary[i % sigma.n]
    return a, b


def strand_permutation(graph: PlabicGraph) -> DecoratedPermutation:
    """Rules-of-the-road walk: at a white vertex take the next dart
    counterclockwise of the arrival dart, at a black vertex the previous one."""
    image = []
    colors = {}
    for i in range(1, graph.n + 1):
        j, _ = _strand_walk(graph, i)
        image.append(j)
        if j == i:
            e = graph.boundary_edge(i)
            other = graph.edges[e][0] if graph.edges[e][1] == ("b", i) else graph.edges[e][1]
            if other[0] == "v" and graph.degree(other[1]) == 1:
                colors[i] = graph.colors[other[1]]
            else:
                colors[i] = WHITE
    return DecoratedPermutation.make(tuple(image), colors)


def _strand_walk(graph: PlabicGraph, i: int) -> tuple[int, list[tuple[int, int]]]:
    """Endpoint and traversal list [(edge, entered_end), ...] of strand i."""
    e = graph.boundary_edge(i)
    end = 0 if graph.edges[e][0] == ("b", i) else 1
    # move along e away from b_i
    path = []
    cap = 2 * len(graph.edges) + 2
    while True:
        target_end = 1 - end
        path.append((e, target_end))
        target = graph.edges[e][target_end]
        if target[0] == "b":
            return target[1], path
        v = target[1]
        rot = graph.rotations[v]
        try:
            pos_in_rot = rot.index((e, target_end))
        except ValueError as exc:
            raise MalformedGraphError("dart missing from rotation") from exc
        step = 1 if graph.colors[v] == WHITE else -1
        e, end = rot[(pos_in_rot + step) % len(rot)]
        if len(path) > cap:
            raise MalformedGraphError("strand %d exceeded 2|E| steps" % i)


@dataclass
class ReducednessReport:
    ok: bool
    violations: list[str]


def is_reduced(graph: PlabicGraph) -> ReducednessReport:
    """Check the reduced-plabic-graph conditions; failures are reported."""
    violations = []
    try:
        walks = {i: _strand_walk(graph, i) for i in range(1, graph.n + 1)}
    except MalformedGraphError as exc:
        return ReducednessReport(False, [str(exc)])

    internal = {
        e
        for e, (a, b) in enumerate(graph.edges)
        if a[0] == "v" and b[0] == "v"
    }
    traversals: dict[int, list[int]] = {e: [] for e in internal}
    for i, (_, path) in walks.items():
        for e, _ in path:
            if e in traversals:
                traversals[e].append(i)
    for e, strands in sorted(traversals.items()):
        if len(strands) != 2 or len(set(strands)) != 2:
            violations.append(
                "edge %d traversed by strands %s, expected two distinct" % (e, strands)
            )

    for i, j in itertools.combinations(range(1, graph.n + 1), 2):
        pos_i = {e: t for t, (e, _) in enumerate(walks[i][1])}
        pos_j = {e: t for t, (e, _) in enumerate(walks[j][1])}
        common = sorted(set(pos_i) & set(pos_j) & internal)
        for e1, e2 in itertools.combinations(common, 2):
            if (pos_i[e1] - pos_i[e2]) * (pos_j[e1] - pos_j[e2]) > 0:
                violations.append(
                    "strands %d and %d double-cross edges %d and %d" % (i, j, e1, e2)
                )

    for i in range(1, graph.n + 1):
        if walks[i][0] == i:
            e = graph.boundary_edge(i)
            other = graph.edges[e][0] if graph.edges[e][1] == ("b", i) else graph.edges[e][1]
            if not (other[0] == "v" and graph.degree(other[1]) == 1):
                violations.append("fixed point %d is not an isolated-vertex lollipop" % i)
    return ReducednessReport(not violations, violations)


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class Move:
    """A local move: remove some triangles, add others.

    kind M1 = white trivalent flip, M3 = black trivalent flip, M2 = square
    relabeling (center -> replacement).
    """

    kind: str
    removed: tuple[tuple[int, int, int], ...]
    added: tuple[tuple[int, int, int], ...]
    center: int = 0
    replacement: int = 0

    def support_labels(self) -> frozenset[int]:
        out = set()
        for t in self.removed + self.added:
            out.update(t)
        return frozenset(out)


def available_moves(sigma: PlabicTriangulation) -> tuple[Move, ...]:
    """All moves available in sigma, sorted canonically."""
    moves = []
    seg_map: dict[tuple[int, int], list[tuple[tuple[int, int, int], int]]] = {}
    for t in sigma.triangles:
        for a, b in itertools.combinations(t, 2):
            third = next(x for x in t if x != a and x != b)
            seg_map.setdefault((min(a, b), max(a, b)), []).append((t, third))
    walked = sigma.walked_segments()

    # trivalent flips: two same-color triangles across an interior diagonal
    for seg, lst in seg_map.items():
        if len(lst) != 2 or seg in walked:
            continue
        (t1, a), (t2, d) = lst
        c1, c2 = triangle_color(t1), triangle_color(t2)
        if c1 != c2:
            continue
        b_, c_ = seg
        if orient(pos(a), pos(d), pos(b_)) * orient(pos(a), pos(d), pos(c_)) >= 0:
            continue
        if orient(pos(b_), pos(c_), pos(a)) * orient(pos(b_), pos(c_), pos(d)) >= 0:
            continue
        added = tuple(sorted((_norm_tri((a, b_, d)), _norm_tri((a, c_, d)))))
        moves.append(
            Move("M1" if c1 == WHITE else "M3", tuple(sorted((t1, t2))), added)
        )

    # square moves: interior degree-4 vertices with alternating star
    star: dict[int, list[tuple[int, int, int]]] = {}
    for t in sigma.triangles:
        for lab in t:
            star.setdefault(lab, []).append(t)
    boundary_set = set(sigma.boundary)
    for v, tris in star.items():
        if v in boundary_set or len(tris) != 4:
            continue
        cyc = _chain_star(v, tris)
        if cyc is None:
            continue
        cols = [triangle_color(t) for t in cyc]
        if cols[0] == cols[1] or cols[1] == cols[2] or cols[2] == cols[3]:
            continue
        all5 = [v] + sorted({x for t in tris for x in t if x != v})
        common = all5[0]
        union = 0
        for lab in all5:
            common &= lab
            union |= lab
        diff = union & ~common
        if bin(diff).count("1") != 4:
            continue
        v2 = common | (diff & ~v)
        removed = tuple(sorted(tris))
        added = tuple(sorted(_norm_tri([v2 if x == v else x for x in t]) for t in tris))
        moves.append(Move("M2", removed, added, center=v, replacement=v2))
    moves.sort(key=lambda m: (m.kind, m.removed, m.added))
    return tuple(moves)


def _chain_star(v: int, tris) -> list[tuple[int, int, int]] | None:
    """Cyclic order of the triangles around v, chained by shared neighbors."""
    pairs = []
    for t in tris:
        others = [x for x in t if x != v]
        if len(others) != 2:
            return None
        pairs.append(tuple(others))
    incid: dict[int, list[int]] = {}
    for idx, (a, b) in enumerate(pairs):
        incid.setdefault(a, []).append(idx)
        incid.setdefault(b, []).append(idx)
    if any(len(lst) != 2 for lst in incid.values()):
        return None
    order = [0]
    used = {0}
    joint = pairs[0][1]
    while len(order) < len(tris):
        nxt = [i for i in incid[joint] if i not in used]
        if not nxt:
            return None
        order.append(nxt[0])
        used.add(nxt[0])
        a, b = pairs[nxt[0]]
        joint = b if a == joint else a
    if joint != pairs[0][0]:
        return None
    return [tris[i] for i in order]


def apply_move(sigma: PlabicTriangulation, move: Move) -> PlabicTriangulation:
    if move not in available_moves(sigma):
        raise PreconditionError("move is not available in this triangulation")
    tris = set(sigma.triangles)
    tris.difference_update(move.removed)
    tris.update(move.added)
    return PlabicTriangulation.make(sigma.n, sigma.k, tris, sigma.boundary)


# ---------------------------------------------------------------------------
# the Oh-Postnikov-Speyer realization from a label collection


def triangulation_from_labels(
    collection: LabelCollection, boundary: GrassmannNecklace
) -> PlabicTriangulation:
    """Build the plabic triangulation of a weakly separated collection:
    white/black cliques become convex polygons fanned from their
    colex-minimal vertex."""
    n, k = collection.n, collection.k
    labels = sorted(mask_of(s) for s in collection.labels)
    for a, b in itertools.combinations(labels, 2):
        if not combinat.is_weakly_separated_mask(a, b):
            raise ValidationError("collection is not weakly separated")
    walk = tuple(mask_of(s) for s in boundary.sets)
    for w in walk:
        if w not in labels:
            raise ValidationError("boundary label missing from the collection")
    tris = []
    for poly in _clique_polygons(labels, n, k):
        tris.extend(_fan_triangles(poly))
    sigma = PlabicTriangulation.make(n, k, tris, walk)
    if sigma.triangles_area2() != sigma.boundary_area2():
        raise ValidationError("clique polygons do not tile the necklace region")
    return sigma


def _clique_polygons(labels: list[int], n: int, k: int) -> list[list[int]]:
    """White and black clique polygons (vertex lists in convex order)."""
    label_set = set(labels)
    polys = []
    seen = set()
    for lab in labels:
        for i in elems_of(lab):
            s = lab & ~(1 << (i - 1))
            if ("w", s) in seen:
                continue
            seen.add(("w", s))
            members = [
                (x, s | (1 << (x - 1)))
                for x in range(1, n + 1)
                if not s >> (x - 1) & 1 and s | (1 << (x - 1)) in label_set
            ]
            if len(members) >= 3:
                polys.append([m for _, m in sorted(members)])
        for i in range(1, n + 1):
            if lab >> (i - 1) & 1:
                continue
            u = lab | (1 << (i - 1))
            if ("b", u) in seen:
                continue
            seen.add(("b", u))
            members = [
                (x, u & ~(1 << (x - 1)))
                for x in elems_of(u)
                if u & ~(1 << (x - 1)) in label_set
            ]
            if len(members) >= 3:
                polys.append([m for _, m in sorted(members)])
    return polys


def _fan_triangles(poly: list[int]) -> list[tuple[int, int, int]]:
    m = len(poly)
    apex = poly.index(min(poly))
    out = []
    for off in range(1, m - 1):
        a = poly[(apex + off) % m]
        b = poly[(apex + off + 1) % m]
        out.append(_norm_tri((poly[apex], a, b)))
    return out


# ---------------------------------------------------------------------------
# enumeration


def seed_triangulation(p: DecoratedPermutation, extend_order: str = "colex") -> PlabicTriangulation:
    """Canonical seed: extend the necklace to a maximal weakly separated
    collection, build a full cyclic triangulation whose chords respect the
    necklace walk, and restrict to the necklace region."""
    necklace = combinat.necklace_of(p)
    n, k = p.n, necklace.k
    walk = tuple(mask_of(s) for s in necklace.sets)
    if k == 0 or k == n:
        return PlabicTriangulation.make(n, k, [], walk)
    base = LabelCollection(n, k, frozenset(necklace.sets))
    if extend_order == "revcolex":
        extended = _extend_revcolex(base)
    else:
        extended = combinat.extend_to_maximal_ws(base)
    ext_masks = sorted(mask_of(s) for s in extended.labels)
    forced = {
        (min(a, b), max(a, b))
        for a, b in zip(walk, walk[1:] + walk[:1])
        if a != b
    }
    full = _cyclic_triangulation(ext_masks, n, k, forced)
    sigma = restrict_to_walk(full, walk)
    dual = dual_graph(sigma)
    if strand_permutation(dual) != p:
        raise AssertionError("seed triangulation has wrong strand permutation")
    return sigma


def _cyclic_triangulation(
    ext_masks: list[int], n: int, k: int, forced: set[tuple[int, int]]
) -> PlabicTriangulation:
    """Full cyclic triangulation of a maximal collection with forced chords."""
    tris = []
    for poly in _clique_polygons(ext_masks, n, k):
        poly_set = set(poly)
        chords = {
            seg
            for seg in forced
            if seg[0] in poly_set and seg[1] in poly_set and not _poly_adjacent(poly, seg)
        }
        tris.extend(_triangulate_with_chords(poly, chords))
    full = PlabicTriangulation.make(n, k, tris, cyclic_walk(n, k))
    if full.triangles_area2() != full.boundary_area2():
        raise AssertionError("constrained cliques do not tile the full polygon")
    return full


def _extend_revcolex(base: LabelCollection) -> LabelCollection:
    """Alternative extension order, used to test seed independence."""
    n, k = base.n, base.k
    have = [mask_of(s) for s in base.labels]
    for a, b in itertools.combinations(have, 2):
        if not combinat.is_weakly_separated_mask(a, b):
            raise ValidationError("input collection is not weakly separated")
    have_set = set(have)
    cands = sorted(
        (mask_of(c) for c in itertools.combinations(range(1, n + 1), k)), reverse=True
    )
    for cand in cands:
        if cand in have_set:
            continue
        if all(combinat.is_weakly_separated_mask(cand, m) for m in have_set):
            have_set.add(cand)
    return LabelCollection(n, k, frozenset(frozenset(elems_of(m)) for m in have_set))


def restrict_to_walk(sigma: PlabicTriangulation, walk: tuple[int, ...]) -> PlabicTriangulation:
    """Sub-triangulation of the region enclosed by a necklace walk."""
    walk_pts = [tuple(3 * c for c in pos(m)) for m in walk]
    keep = []
    for t in sigma.triangles:
        cx = sum(pos(l)[0] for l in t)
        cy = sum(pos(l)[1] for l in t)
        w = winding_number(walk_pts, (cx, cy))
        if abs(w) > 1:
            raise ValidationError("necklace walk winds more than once")
        if w:
            keep.append(t)
    out = PlabicTriangulation.make(sigma.n, sigma.k, keep, walk)
    if out.triangles_area2() != out.boundary_area2():
        raise ValidationError("restricted triangles do not tile the necklace region")
    return out


def enumerate_plabic(
    p: DecoratedPermutation,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    validate: bool = False,
    extend_order: str = "colex",
) -> FlipGraph:
    """BFS closure of the moves M1/M2/M3 from the canonical seed."""
    seed = seed_triangulation(p, extend_order=extend_order)
    visited: dict[tuple, int] = {seed.key(): 0}
    payload = [seed]
    edges_raw: set[tuple[int, int, Move]] = set()
    depth = [0]
    frontier = [seed]
    level = 0
    while frontier:
        next_frontier = []
        for sigma in sorted(frontier, key=lambda s: s.key()):
            u = visited[sigma.key()]
            for move in available_moves(sigma):
                nxt = PlabicTriangulation.make(
                    sigma.n,
                    sigma.k,
                    set(sigma.triangles).difference(move.removed).union(move.added),
                    sigma.boundary,
                )
                if validate:
                    _validate_move_edge(sigma, nxt, p)
                w = visited.get(nxt.key())
                if w is None:
                    if len(visited) >= vertex_cap:
                        raise ResourceCapExceeded(
                            "vertex cap %d exceeded enumerating plabic graphs" % vertex_cap,
                            partial_count=len(visited),
                        )
                    w = len(visited)
                    visited[nxt.key()] = w
                    payload.append(nxt)
                    depth.append(level + 1)
                    next_frontier.append(nxt)
                a, b = min(u, w), max(u, w)
                lbl = move if u <= w else _invert_move(move)
                edges_raw.add((a, b, lbl))
        frontier = next_frontier
        level += 1

    order = sorted(range(len(payload)), key=lambda i: payload[i].key())
    remap = {old: new for new, old in enumerate(order)}
    vertices = [payload[i].key() for i in order]
    payloads = [payload[i] for i in order]
    ranks = [depth[i] for i in order]
    edges = sorted(
        (
            (remap[u], remap[v], m)
            if remap[u] <= remap[v]
            else (remap[v], remap[u], _invert_move(m))
            for u, v, m in edges_raw
        ),
        key=lambda e: (e[0], e[1], e[2].kind, e[2].removed),
    )
    dedup = []
    seen_pairs = set()
    for u, v, m in edges:
        if (u, v) not in seen_pairs:
            seen_pairs.add((u, v))
            dedup.append((u, v, m))
    return FlipGraph(vertices, dedup, ranks, remap[0], None, payloads)


def _invert_move(m: Move) -> Move:
    return Move(m.kind, m.added, m.removed, center=m.replacement, replacement=m.center)


def _validate_move_edge(sigma, nxt, p):
    for s in (sigma, nxt):
        g = dual_graph(s)
        rep = is_reduced(g)
        if not rep.ok:
            raise AssertionError("move produced a non-reduced graph: %s" % rep.violations)
        if strand_permutation(g) != p:
            raise AssertionError("move changed the strand permutation")


# ---------------------------------------------------------------------------
# UP/DOWN layer machinery


def _white_to_black(tri: tuple[int, int, int]) -> tuple[int, int, int]:
    """The level-(k+1) black triangle cut from the same tile as a white one."""
    union = tri[0] | tri[1] | tri[2]
    common = tri[0] & tri[1] & tri[2]
    extras = union & ~common
    return _norm_tri(tuple(union & ~(1 << (i - 1)) for i in elems_of(extras)))


def _black_to_white(tri: tuple[int, int, int]) -> tuple[int, int, int]:
    """The level-(k-1) white triangle cut from the same tile as a black one."""
    union = tri[0] | tri[1] | tri[2]
    common = tri[0] & tri[1] & tri[2]
    removed = union & ~common
    return _norm_tri(tuple(common | (1 << (i - 1)) for i in elems_of(removed)))


def layer_step(sigma: PlabicTriangulation, direction: str) -> PlabicTriangulation:
    """The neighboring cross-section of a full cyclic plabic triangulation.

    Going up, black triangles are forced by the white triangles below and the
    white regions are fanned canonically; going down is the mirror image.
    """
    n, k = sigma.n, sigma.k
    if sigma.boundary != cyclic_walk(n, k):
        raise ArgumentError("layer_step needs a full cyclic cross-section")
    if direction not in ("up", "down"):
        raise ArgumentError("direction must be 'up' or 'down'")
    k2 = k + 1 if direction == "up" else k - 1
    if not 1 <= k2 <= n - 1:
        raise ArgumentError("target level %d out of [1, n-1]" % k2)
    if direction == "up":
        fixed = [_white_to_black(t) for t in sigma.triangles if triangle_color(t) == WHITE]
        free_color = WHITE
    else:
        fixed = [_black_to_white(t) for t in sigma.triangles if triangle_color(t) == BLACK]
        free_color = BLACK
    labels = set(cyclic_walk(n, k2))
    for t in fixed:
        labels.update(t)
    tris = list(fixed)
    for poly in _clique_polygons(sorted(labels), n, k2):
        color = triangle_color(_norm_tri(poly[:3])) if len(poly) == 3 else _poly_color(poly)
        if color == free_color:
            tris.extend(_fan_triangles(poly))
    out = PlabicTriangulation.make(n, k2, tris, cyclic_walk(n, k2))
    if out.triangles_area2() != out.boundary_area2():
        raise AssertionError("layer step does not tile the section")
    return out


def _poly_color(poly: list[int]) -> str:
    k = bin(poly[0]).count("1")
    inter = poly[0]
    union = 0
    for m in poly:
        inter &= m
        union |= m
    if bin(inter).count("1") == k - 1:
        return WHITE
    if bin(union).count("1") == k + 1:
        return BLACK
    raise ValidationError("clique polygon has no color")


def extend_to_tiling(sigma: PlabicTriangulation) -> Tiling:
    """Stack layer steps to recover a fine zonotopal tiling of Z(n, 3) whose
    level-k cross-section is exactly `sigma` (cyclic boundary required)."""
    n, k = sigma.n, sigma.k
    if sigma.boundary != cyclic_walk(n, k):
        raise ArgumentError("extend_to_tiling needs a full cyclic cross-section")
    levels = {k: sigma}
    for j in range(k + 1, n):
        levels[j] = layer_step(levels[j - 1], "up")
    for j in range(k - 1, 0, -1):
        levels[j] = layer_step(levels[j + 1], "down")
    spec = ZonotopeSpec(n, 3)
    tiles = []
    for j in range(1, n):
        for t in levels[j].triangles:
            if triangle_color(t) != WHITE:
                continue
            common = t[0] & t[1] & t[2]
            zero = (t[0] | t[1] | t[2]) & ~common
            tiles.append(SignedSubset(n, common, spec.full_mask & ~(common | zero)))
    tiling = Tiling.from_tiles(spec, tiles)
    if cross_section(tiling, k) != sigma:
        raise AssertionError("extend_to_tiling does not round-trip at level k")
    return tiling


def embed_in_cyclic(sigma: PlabicTriangulation) -> tuple[PlabicTriangulation, tuple[int, ...]]:
    """Embed a plabic triangulation into a full cyclic one, keeping its own
    triangles verbatim; returns (full triangulation, original boundary walk)."""
    n, k = sigma.n, sigma.k
    if sigma.boundary == cyclic_walk(n, k):
        return sigma, sigma.boundary
    labels = {frozenset(elems_of(m)) for m in sigma.labels()}
    extended = combinat.extend_to_maximal_ws(LabelCollection(n, k, frozenset(labels)))
    ext_masks = sorted(mask_of(s) for s in extended.labels)
    forced: set[tuple[int, int]] = set()
    for t in sigma.triangles:
        for a, b in itertools.combinations(t, 2):
            forced.add((min(a, b), max(a, b)))
    forced.update(sigma.walked_segments())
    full = _cyclic_triangulation(ext_masks, n, k, forced)
    if not set(sigma.triangles) <= set(full.triangles):
        raise AssertionError("embedding does not contain the original triangulation")
    return full, sigma.boundary


def _poly_adjacent(poly: list[int], seg: tuple[int, int]) -> bool:
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        if (min(a, b), max(a, b)) == seg:
            return True
    return False


def _triangulate_with_chords(poly: list[int], chords: set[tuple[int, int]]):
    """Triangulate a convex polygon respecting non-crossing forced chords."""
    if len(poly) < 3:
        return []
    if len(poly) == 3:
        return [_norm_tri(poly)]
    for a, b in sorted(chords):
        ia, ib = poly.index(a), poly.index(b)
        if ia > ib:
            ia, ib = ib, ia
        if ib - ia in (1, len(poly) - 1):
            continue
        left = poly[ia : ib + 1]
        right = poly[ib:] + poly[: ia + 1]
        rest = {c for c in chords if c != (min(a, b), max(a, b))}
        lset, rset = set(left), set(right)
        lch = {c for c in rest if c[0] in lset and c[1] in lset and not (c[0] in rset and c[1] in rset)}
        rch = rest - lch
        return _triangulate_with_chords(left, lch) + _triangulate_with_chords(right, rch)
    return _fan_triangles(poly)


def up_down_graph(sigma: PlabicTriangulation, direction: str) -> PlabicTriangulation:
    """UP/DOWN of a plabic triangulation with arbitrary connectivity: embed,
    extend to a tiling, take the neighboring layer, cut along the shifted
    necklace (free regions re-fanned canonically)."""
    if direction not in ("up", "down"):
        raise ArgumentError("direction must be 'up' or 'down'")
    necklace = sigma.necklace()
    if len(set(necklace.sets)) == 1:
        raise PreconditionError("UP/DOWN undefined for identity connectivity")
    shifted = combinat.necklace_shift(necklace, direction)
    if len(set(shifted.sets)) == 1:
        raise PreconditionError("%s connectivity is an identity" % direction.upper())
    full, _ = embed_in_cyclic(sigma)
    tiling = extend_to_tiling(full)
    k2 = sigma.k + 1 if direction == "up" else sigma.k - 1
    section = cross_section(tiling, k2)
    walk = tuple(mask_of(s) for s in shifted.sets)
    return restrict_to_walk(section, walk)


# ---------------------------------------------------------------------------
# flips <-> square moves, move realization, tiling alignment


def flip_move_correspondence(tiling: Tiling) -> list[tuple]:
    """The bijection between available flips and square moves across layers.

    Returns [(FlipSite, level, Move)]; the square move of a flip with prefix
    P sits at level |P| + 2, centered on P u {i : s_i = 1}.
    """
    from .zonotope import available_flips

    spec = tiling.spec
    if spec.d != 3:
        raise ArgumentError("flip/move correspondence is defined for d = 3")
    sections: dict[int, PlabicTriangulation] = {}
    moves: dict[int, tuple[Move, ...]] = {}
    out = []
    for site in available_flips(tiling):
        p_sz = bin(site.prefix).count("1")
        level = p_sz + 2
        elems = site.elements()
        v = site.prefix
        v2 = site.prefix
        for e, s in zip(elems, site.bits):
            if s:
                v |= 1 << (e - 1)
            else:
                v2 |= 1 << (e - 1)
        if level not in sections:
            sections[level] = cross_section(tiling, level)
            moves[level] = available_moves(sections[level])
        match = [
            m
            for m in moves[level]
            if m.kind == "M2" and m.center == v and m.replacement == v2
        ]
        if len(match) != 1:
            raise AssertionError("flip at %s has no unique square move" % (elems,))
        out.append((site, level, match[0]))
    return out


def square_moves_by_level(tiling: Tiling) -> dict[int, list[Move]]:
    """Independent count of square moves in every cross-section."""
    out = {}
    for k in range(1, tiling.spec.n):
        sec = cross_section(tiling, k)
        out[k] = [m for m in available_moves(sec) if m.kind == "M2"]
    return out


def _tri_and(t):
    return t[0] & t[1] & t[2]


def _tri_or(t):
    return t[0] | t[1] | t[2]


def realize_trivalent_move(tiling: Tiling, k: int, move: Move) -> list:
    """A flip sequence whose prefix leaves every level >= k (black move) or
    <= k (white move) unchanged and whose last flip performs exactly `move`
    in the level-k cross-section."""
    seq, _ = _realize_move(tiling, k, move)
    return seq


def _realize_move(tiling: Tiling, k: int, move: Move) -> tuple[list, Tiling]:
    from .zonotope import apply_flip, available_flips

    if move.kind not in ("M1", "M3"):
        raise ArgumentError("only trivalent moves can be realized by flips")
    sigma = cross_section(tiling, k)
    if move not in available_moves(sigma):
        raise PreconditionError("move is not available in the level-%d section" % k)
    black = move.kind == "M3"
    t1, t2 = move.removed
    if black:
        zero1 = _tri_or(t1) & ~_tri_and(t1)
        zero2 = _tri_or(t2) & ~_tri_and(t2)
        if _tri_or(t1) != _tri_or(t2):
            raise AssertionError("black move triangles must share their union")
    else:
        zero1 = _tri_or(t1) & ~_tri_and(t1)
        zero2 = _tri_or(t2) & ~_tri_and(t2)
        if _tri_and(t1) != _tri_and(t2):
            raise AssertionError("white move triangles must share their intersection")
    s4 = zero1 | zero2
    shared = zero1 & zero2
    if black:
        center = (_tri_or(t1) & ~s4) | (zero1 ^ zero2)
        adj = k - 1
        clique_of = _tri_or
    else:
        center = _tri_and(t1) | shared
        adj = k + 1
        clique_of = _tri_and
    clique_masks = [
        (center | (1 << (b - 1))) if black else (center & ~(1 << (b - 1)))
        for b in elems_of(shared)
    ]
    seq: list = []
    guard = 0
    while True:
        guard += 1
        if guard > 64 * tiling.spec.n**3:
            raise AssertionError("move realization recursion exceeded its bound")
        hit = next((s for s in available_flips(tiling) if s.smask == s4), None)
        if hit is not None:
            seq.append(hit)
            return seq, apply_flip(tiling, hit)
        progressed = False
        section = cross_section(tiling, adj)
        for cl in clique_masks:
            star = [
                t
                for t in section.triangles
                if center in t and clique_of(t) == cl
            ]
            if len(star) <= 1:
                continue
            sub = _star_reduction_move(section, center, cl, clique_of, "M3" if black else "M1")
            subseq, tiling = _realize_move(tiling, adj, sub)
            seq.extend(subseq)
            progressed = True
            break
        if not progressed:
            raise AssertionError("flip unavailable but no ear reduction applies")


def _star_reduction_move(section, center, clique, clique_of, kind) -> Move:
    """A trivalent move inside one clique region that lowers the center's degree."""
    for m in available_moves(section):
        if m.kind != kind:
            continue
        if any(clique_of(t) != clique for t in m.removed):
            continue
        if not all(center in t for t in m.removed):
            continue
        if sum(1 for t in m.added if center in t) == 1:
            return m
    raise AssertionError("no star-reducing move available in the clique")


def align_tilings(a: Tiling, b: Tiling, k: int) -> list:
    """A flip sequence from `a` to `b` that never alters the level-k section."""
    if cross_section(a, k) != cross_section(b, k):
        raise PreconditionError("tilings differ in the level-k cross-section")
    n = a.spec.n
    cur = a
    seq: list = []
    for j in range(k + 1, n - 1):
        path = _section_match_moves(cross_section(cur, j), cross_section(b, j), WHITE)
        for move in path:
            subseq, cur = _realize_move(cur, j, move)
            seq.extend(subseq)
    for j in range(k - 1, 1, -1):
        path = _section_match_moves(cross_section(cur, j), cross_section(b, j), BLACK)
        for move in path:
            subseq, cur = _realize_move(cur, j, move)
            seq.extend(subseq)
    if cur.key() != b.key():
        raise AssertionError("alignment did not converge")
    return seq


def _section_match_moves(sig_from: PlabicTriangulation, sig_to: PlabicTriangulation, color: str):
    """Trivalent moves (of one color) transforming one section into another
    that agrees with it up to the triangulation of that color's regions."""
    if sig_from.labels() != sig_to.labels():
        raise AssertionError("sections disagree on labels")
    other = [t for t in sig_from.triangles if triangle_color(t) != color]
    if other != [t for t in sig_to.triangles if triangle_color(t) != color]:
        raise AssertionError("sections disagree outside the free color")
    kind = "M1" if color == WHITE else "M3"
    by_clique_from: dict[int, set] = {}
    by_clique_to: dict[int, set] = {}
    keyf = _tri_and if color == WHITE else _tri_or
    for t in sig_from.triangles:
        if triangle_color(t) == color:
            by_clique_from.setdefault(keyf(t), set()).add(t)
    for t in sig_to.triangles:
        if triangle_color(t) == color:
            by_clique_to.setdefault(keyf(t), set()).add(t)
    moves = []
    for clique in sorted(by_clique_from):
        cur = by_clique_from[clique]
        tgt = by_clique_to.get(clique, set())
        if cur == tgt:
            continue
        verts = sorted({x for t in cur for x in t})
        moves.extend(_poly_flip_path(verts, cur, tgt, kind))
    return moves


def _poly_flip_path(verts, tris_from, tris_to, kind):
    """Flip path between two triangulations of the same convex vertex set."""
    to_fan_a = _fan_path(verts, set(tris_from), kind)
    to_fan_b = _fan_path(verts, set(tris_to), kind)
    return to_fan_a + [_invert_move(m) for m in reversed(to_fan_b)]


def _fan_path(verts, tris: set, kind: str):
    """Flips carrying a triangulation to the fan from the colex-min vertex."""
    apex = min(verts)
    moves = []
    tris = set(tris)
    while True:
        star = [t for t in tris if apex in t]
        if len(star) == len(verts) - 2:
            return moves
        flipped = False
        for t in sorted(tris):
            if apex in t:
                continue
            for st in sorted(star):
                shared = set(t) & set(st)
                if len(shared) == 2:
                    x, y = sorted(shared)
                    z = next(q for q in t if q not in shared)
                    removed = tuple(sorted((st, t)))
                    added = tuple(sorted((_norm_tri((apex, x, z)), _norm_tri((apex, y, z)))))
                    moves.append(Move(kind, removed, added))
                    tris.difference_update(removed)
                    tris.update(added)
                    flipped = True
                    break
            if flipped:
                break
        if not flipped:
            raise AssertionError("fan path stalled")


# ---------------------------------------------------------------------------
# the complexes X (all moves) and Y (square moves modulo trivalent moves)


def _embedded_candidates(n: int, k: int):
    """(h, family, sub-walk) for every possible embedded pi(5,h) sub-necklace.

    h = 1/4 give white/black pentagon supports, h = 2/3 white/black decagons.
    The family is the set of labels S u psi(K) over h-subsets K of [5].
    """
    cands = []
    for h in (1, 2, 3, 4):
        s_size = k - h
        if s_size < 0 or s_size > n - 5:
            continue
        sub_neck = combinat.necklace_of(combinat.cyclic_decorated(5, h))
        hsubsets = list(itertools.combinations(range(1, 6), h))
        for amask_elems in itertools.combinations(range(1, n + 1), 5):
            rest = [x for x in range(1, n + 1) if x not in amask_elems]
            psi = {i + 1: amask_elems[i] for i in range(5)}
            for s_elems in itertools.combinations(rest, s_size):
                smask = mask_of(s_elems)
                family = frozenset(
                    smask | mask_of(psi[i] for i in kk) for kk in hsubsets
                )
                walk5 = tuple(
                    smask | mask_of(psi[i] for i in sub_neck[j]) for j in range(1, 6)
                )
                cands.append((h, family, walk5))
    return cands


_CELL_KIND = {1: "pentagon_white", 2: "decagon_white", 3: "decagon_black", 4: "pentagon_black"}
_CELL_LEN = {1: 5, 2: 10, 3: 10, 4: 5}


def _embedded_region_present(sigma: PlabicTriangulation, family: frozenset, walk5) -> bool:
    labs = sigma.labels()
    if any(b not in labs for b in walk5):
        return False
    area = abs(shoelace2([pos(b) for b in walk5]))
    if area == 0:
        return False
    tri_area = sum(
        triangle_area2(pos(a), pos(b), pos(c))
        for a, b, c in sigma.triangles
        if a in family and b in family and c in family
    )
    return tri_area == area


def _trace_move_cycle(graph: FlipGraph, index, vid: int, family: frozenset, expected: int):
    """Cycle of vertices reachable by moves supported inside the family."""

    def restricted(v):
        out = []
        for m in available_moves(graph.payloads[v]):
            if m.support_labels() <= family:
                nxt = apply_move(graph.payloads[v], m)
                out.append(index[nxt.key()])
        return sorted(out)

    first = restricted(vid)
    if len(first) != 2:
        raise AssertionError("embedded region is not on a 2-regular cycle")
    cycle = [vid]
    prev, cur = vid, first[0]
    while cur != vid:
        cycle.append(cur)
        nxt = [w for w in restricted(cur) if w != prev]
        if len(nxt) != 1 or len(cycle) > expected:
            raise AssertionError("embedded cycle has unexpected shape")
        prev, cur = cur, nxt[0]
    if len(cycle) != expected:
        raise AssertionError("embedded cycle length %d != %d" % (len(cycle), expected))
    return cycle


def _quad_cells(graph: FlipGraph, index):
    """Operationally commuting move pairs with disjoint modified triangles."""
    cells = {}
    for vid, sigma in enumerate(graph.payloads):
        moves = available_moves(sigma)
        for m1, m2 in itertools.combinations(moves, 2):
            if set(m1.removed) & set(m2.removed):
                continue
            s1 = apply_move(sigma, m1)
            s2 = apply_move(sigma, m2)
            if m2 not in available_moves(s1) or m1 not in available_moves(s2):
                continue
            s12 = apply_move(s1, m2)
            s21 = apply_move(s2, m1)
            if s12.key() != s21.key():
                continue
            quad = (vid, index[s1.key()], index[s12.key()], index[s2.key()])
            if len(set(quad)) == 4:
                cells.setdefault(frozenset(quad), ("quad", quad, (m1.kind, m2.kind)))
    return cells


def build_plabic_complex(
    p: DecoratedPermutation,
    kind: str,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    extend_order: str = "colex",
):
    """The 2-complex of trivalent plabic graphs (kind "X") or of their
    square-move classes (kind "Y") for a decorated permutation.

    Returns (TwoComplex, info) where info lists the glued cells.
    """
    from .topology import TwoComplex

    if kind not in ("X", "Y"):
        raise ArgumentError("kind must be 'X' or 'Y'")
    graph = enumerate_plabic(p, vertex_cap=vertex_cap, extend_order=extend_order)
    index = {key: i for i, key in enumerate(graph.vertices)}
    quads = _quad_cells(graph, index)
    embedded = {}
    cands = _embedded_candidates(p.n, graph.payloads[0].k)
    for vid, sigma in enumerate(graph.payloads):
        for h, family, walk5 in cands:
            if not _embedded_region_present(sigma, family, walk5):
                continue
            cycle = _trace_move_cycle(graph, index, vid, family, _CELL_LEN[h])
            embedded.setdefault(frozenset(cycle), (_CELL_KIND[h], tuple(cycle), h))

    if kind == "X":
        cells = [("quad", cyc) for _, (kname, cyc, _) in sorted(quads.items(), key=lambda kv: tuple(sorted(kv[0])))]
        cells += [
            (kname, cyc)
            for _, (kname, cyc, _) in sorted(embedded.items(), key=lambda kv: tuple(sorted(kv[0])))
        ]
        complex_ = TwoComplex.from_graph(
            graph.n_vertices,
            [(u, v) for u, v, _ in graph.edges],
            [cyc for _, cyc in cells],
        )
        info = {
            "kind": "X",
            "n_vertices": graph.n_vertices,
            "n_edges": graph.n_edges,
            "cells": [(name, list(cyc)) for name, cyc in cells],
            "graph": graph,
        }
        return complex_, info

    # kind Y: quotient by trivalent moves, keep square moves
    parent = list(range(graph.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, m in graph.edges:
        if m.kind in ("M1", "M3"):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    reps = sorted({find(x) for x in range(graph.n_vertices)})
    class_id = {r: i for i, r in enumerate(reps)}

    def cls(v):
        return class_id[find(v)]

    y_edges = sorted(
        {
            (min(cls(u), cls(v)), max(cls(u), cls(v)))
            for u, v, m in graph.edges
            if m.kind == "M2" and cls(u) != cls(v)
        }
    )
    y_cells = {}
    for key, (_, quad, kinds) in quads.items():
        if kinds != ("M2", "M2"):
            continue
        cyc = tuple(cls(v) for v in quad)
        if len(set(cyc)) == 4:
            y_cells.setdefault(frozenset(cyc), ("quad", cyc))
    for key, (kname, cyc, h) in embedded.items():
        if h not in (2, 3):
            continue
        proj = []
        for v in cyc:
            c = cls(v)
            if not proj or (proj[-1] != c and c != proj[0]):
                proj.append(c)
        if len(proj) != 5 or len(set(proj)) != 5:
            raise AssertionError("decagon does not project to a square-move pentagon")
        y_cells.setdefault(frozenset(proj), ("pentagon", tuple(proj)))
    cells = [
        (name, cyc)
        for _, (name, cyc) in sorted(y_cells.items(), key=lambda kv: tuple(sorted(kv[0])))
    ]
    complex_ = TwoComplex.from_graph(len(reps), y_edges, [cyc for _, cyc in cells])
    info = {
        "kind": "Y",
        "n_vertices": len(reps),
        "n_edges": len(y_edges),
        "cells": [(name, list(cyc)) for name, cyc in cells],
        "graph": graph,
        "class_of_vertex": [cls(v) for v in range(graph.n_vertices)],
    }
    return complex_, info


# ---------------------------------------------------------------------------
# SVG export


def triangulation_to_svg(
    sigma: PlabicTriangulation,
    dual_overlay: bool = False,
    strands: bool = False,
    scale: float = 24.0,
) -> str:
    """Render a plabic triangulation (rounding coordinates only here)."""
    labs = sorted(sigma.labels())
    pts = {l: pos(l) for l in labs}
    if pts:
        xs = [p[0] for p in pts.values()]
        ys = [p[1] for p in pts.values()]
        x0, y0 = min(xs), min(ys)
        w = max(2, max(xs) - x0) + 2
        h = max(2, max(ys) - y0) + 2
    else:
        x0 = y0 = 0
        w = h = 2

    def xy(p):
        return ((p[0] - x0 + 1) * scale, (h - (p[1] - y0 + 1)) * scale)

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
        % (int(w * scale) + 1, int(h * scale) + 1)
    ]
    fill = {WHITE: "#ffffff", BLACK: "#b0b0b0"}
    for t in sigma.triangles:
        cords = " ".join("%.2f,%.2f" % xy(pts[l]) for l in t)
        lines.append(
            '<polygon points="%s" fill="%s" stroke="black" stroke-width="1"/>'
            % (cords, fill[triangle_color(t)])
        )
    for i, a, b in sigma.walk_steps():
        xa, ya = xy(pts[a])
        xb, yb = xy(pts[b])
        lines.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#2040c0" stroke-width="2"/>'
            % (xa, ya, xb, yb)
        )
    for l in labs:
        x, y = xy(pts[l])
        lines.append('<circle cx="%.2f" cy="%.2f" r="3" fill="black"/>' % (x, y))
        lines.append(
            '<text x="%.2f" y="%.2f" font-size="10">%s</text>'
            % (x + 4, y - 4, "".join(map(str, elems_of(l))))
        )
    if dual_overlay:
        g = dual_graph(sigma)
        centers = {}
        for v in range(len(g.colors)):
            if v < len(sigma.triangles):
                t = sigma.triangles[v]
                cx = sum(pts[l][0] for l in t) / 3
                cy = sum(pts[l][1] for l in t) / 3
                centers[("v", v)] = (cx, cy)
        for e, (a, b) in enumerate(g.edges):
            if a in centers and b in centers:
                xa, ya = xy(centers[a])
                xb, yb = xy(centers[b])
                lines.append(
                    '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#c03030" stroke-width="1.5"/>'
                    % (xa, ya, xb, yb)
                )
        for key, (cx, cy) in centers.items():
            x, y = xy((cx, cy))
            color = "#ffffff" if g.colors[key[1]] == WHITE else "#000000"
            lines.append(
                '<circle cx="%.2f" cy="%.2f" r="5" fill="%s" stroke="black"/>' % (x, y, color)
            )
    if strands:
        g = dual_graph(sigma)
        anchors = _edge_anchors(sigma, g)
        for i in range(1, sigma.n + 1):
            _, path = _strand_walk(g, i)
            cords = " ".join("%.2f,%.2f" % xy(anchors[e]) for e, _ in path)
            lines.append(
                '<polyline points="%s" fill="none" stroke="#108040" '
                'stroke-width="1" stroke-dasharray="4 2"/>' % cords
            )
    lines.append("</svg>")
    return "\n".join(lines)


def _edge_anchors(sigma: PlabicTriangulation, g: PlabicGraph) -> dict[int, tuple]:
    """Midpoint of the label segment each dual edge crosses (exact halves)."""
    steps = {i: (a, b) for i, a, b in sigma.walk_steps()}
    anchors = {}
    for e, (a, b) in enumerate(g.edges):
        seg = None
        for end, other in ((a, b), (b, a)):
            if end[0] == "v" and end[1] < len(sigma.triangles):
                seg = _edge_segment(sigma, sigma.triangles[end[1]], g.edges[e], other)
                break
        if seg is None:
            if a[0] == "b" and b[0] == "b":
                seg = steps[min(a[1], b[1])]
            else:
                lab = sigma.boundary[(a[1] if a[0] == "b" else b[1]) - 1]
                seg = (lab, lab)
        pa, pb = pos(seg[0]), pos(seg[1])
        anchors[e] = ((pa[0] + pb[0]) / 2, (pa[1] + pb[1]) / 2)
    return anchors
