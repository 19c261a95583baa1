"""Triple crossing diagrams through their plabic images.

A (minimal) triple crossing diagram is stored as the bipartite-normalized
plabic data it corresponds to: white regions triangulated, black regions
fully contracted.  The state is therefore (label collection, white
triangles); black regions are recomputed from the labels.  The 2<->2 moves
are white trivalent flips, and square moves followed by re-contraction of
the black side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import combinat, plabic
from .combinat import BLACK, WHITE, DecoratedPermutation
from .errors import ArgumentError, ResourceCapExceeded, ValidationError
from .flipgraph import FlipGraph
from .geometry import shoelace2, triangle_area2
from .plabic import (
    PlabicGraph,
    PlabicTriangulation,
    _fan_triangles,
    _norm_tri,
    available_moves,
    is_reduced,
    pos,
    seed_triangulation,
    strand_permutation,
    triangle_color,
)
from .zonotope import elems_of, mask_of

DEFAULT_VERTEX_CAP = 200_000


@dataclass(frozen=True)
class TripleCrossingDiagram:
    """The plabic image of a triple crossing diagram."""

    graph: PlabicGraph
    connectivity: DecoratedPermutation


def as_tcd(graph: PlabicGraph) -> TripleCrossingDiagram:
    """Validate that a plabic graph is the image of a triple crossing diagram:
    white vertices trivalent (isolated fixed-point markers aside), no edge
    joins two black vertices, and the graph is reduced."""
    for e, (a, b) in enumerate(graph.edges):
        if a[0] == "v" and b[0] == "v":
            if graph.colors[a[1]] == BLACK and graph.colors[b[1]] == BLACK:
                raise ValidationError("black-black edge %d" % e)
    for v, color in enumerate(graph.colors):
        if color == WHITE and graph.degree(v) not in (1, 3):
            raise ValidationError("white vertex degree %d at vertex %d" % (graph.degree(v), v))
    report = is_reduced(graph)
    if not report.ok:
        raise ValidationError("not reduced: %s" % report.violations[0])
    return TripleCrossingDiagram(graph, strand_permutation(graph))


@dataclass(frozen=True)
class TCDState:
    """Normal form of a diagram: labels plus the white triangulation."""

    n: int
    k: int
    whites: tuple[tuple[int, int, int], ...]
    labels: tuple[int, ...]
    boundary: tuple[int, ...]

    def key(self):
        return (self.whites, self.labels)

    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    def black_cliques(self) -> dict[int, list[int]]:
        """Union mask -> members (labels) in convex (removed-element) order."""
        labs = set(self.labels)
        out: dict[int, list[int]] = {}
        for lab in self.labels:
            for i in range(1, self.n + 1):
                bit = 1 << (i - 1)
                if lab & bit:
                    continue
                u = lab | bit
                if u in out:
                    continue
                members = [
                    (x, u & ~(1 << (x - 1)))
                    for x in elems_of(u)
                    if u & ~(1 << (x - 1)) in labs
                ]
                if len(members) >= 3:
                    out[u] = [m for _, m in sorted(members)]
        return out

    def representative(self) -> PlabicTriangulation:
        """Trivalent representative: black cliques fanned canonically."""
        tris = list(self.whites)
        for poly in self.black_cliques().values():
            tris.extend(_fan_triangles(poly))
        return PlabicTriangulation.make(self.n, self.k, tris, self.boundary)


def normalize(sigma: PlabicTriangulation) -> TCDState:
    """Contract the black side of a trivalent plabic triangulation."""
    whites = tuple(sorted(t for t in sigma.triangles if triangle_color(t) == WHITE))
    return TCDState(sigma.n, sigma.k, whites, tuple(sorted(sigma.labels())), sigma.boundary)


@dataclass(frozen=True)
class TCDMove:
    """A 2<->2 move: a white flip, or a square relabel plus re-contraction."""

    kind: str  # "M1" or "M2"
    removed_whites: tuple[tuple[int, int, int], ...]
    added_whites: tuple[tuple[int, int, int], ...]
    center: int = 0
    replacement: int = 0

    def support_labels(self) -> frozenset[int]:
        out = {self.center, self.replacement} - {0}
        for t in self.removed_whites + self.added_whites:
            out.update(t)
        return frozenset(out)


def _white_moves(state: TCDState) -> list[TCDMove]:
    """White trivalent flips of the state (via its representative)."""
    rep = state.representative()
    out = []
    for m in available_moves(rep):
        if m.kind == "M1":
            out.append(TCDMove("M1", m.removed, m.added))
    return out


def _square_moves(state: TCDState) -> list[TCDMove]:
    """Square sites of the contracted diagram: interior labels whose star is
    two white triangles alternating with two black regions."""
    labs = state.label_set()
    boundary_set = set(state.boundary)
    cliques = state.black_cliques()
    star_w: dict[int, list[tuple[int, int, int]]] = {}
    for t in state.whites:
        for lab in t:
            star_w.setdefault(lab, []).append(t)
    out = []
    for v in sorted(labs):
        if v in boundary_set:
            continue
        whites = star_w.get(v, [])
        if len(whites) != 2:
            continue
        black_faces = []
        for u, members in cliques.items():
            if v in members:
                idx = members.index(v)
                nb = (members[idx - 1], members[(idx + 1) % len(members)])
                black_faces.append((u, nb))
        if len(black_faces) != 2:
            continue
        faces = [("w", t, tuple(x for x in t if x != v)) for t in whites]
        faces += [("b", u, nb) for u, nb in black_faces]
        cyc = _chain_face_cycle(faces)
        if cyc is None:
            continue
        kinds = [f[0] for f in cyc]
        if kinds in (["w", "b", "w", "b"], ["b", "w", "b", "w"]):
            outer = sorted({x for f in faces for x in f[2]})
            if len(outer) != 4:
                continue
            all5 = [v] + outer
            common = all5[0]
            union = 0
            for lab in all5:
                common &= lab
                union |= lab
            diff = union & ~common
            if bin(diff).count("1") != 4:
                continue
            v2 = common | (diff & ~v)
            if v2 in labs:
                continue
            added = tuple(
                sorted(_norm_tri((nb[0], v2, nb[1])) for u, nb in black_faces)
            )
            out.append(TCDMove("M2", tuple(sorted(whites)), added, center=v, replacement=v2))
    return out


def _chain_face_cycle(faces):
    """Cyclic order of faces around a vertex, chained by shared neighbors."""
    incid: dict[int, list[int]] = {}
    for idx, f in enumerate(faces):
        a, b = f[2]
        incid.setdefault(a, []).append(idx)
        incid.setdefault(b, []).append(idx)
    if any(len(lst) != 2 for lst in incid.values()):
        return None
    order = [0]
    used = {0}
    joint = faces[0][2][1]
    while len(order) < len(faces):
        nxt = [i for i in incid[joint] if i not in used]
        if not nxt:
            return None
        order.append(nxt[0])
        used.add(nxt[0])
        a, b = faces[nxt[0]][2]
        joint = b if a == joint else a
    if joint != faces[0][2][0]:
        return None
    return [faces[i] for i in order]


def apply_tcd_move(state: TCDState, move: TCDMove) -> TCDState:
    whites = set(state.whites)
    if move.kind == "M1":
        whites.difference_update(move.removed_whites)
        whites.update(move.added_whites)
        return TCDState(state.n, state.k, tuple(sorted(whites)), state.labels, state.boundary)
    whites.difference_update(move.removed_whites)
    whites.update(move.added_whites)
    labels = sorted(set(state.labels) - {move.center} | {move.replacement})
    return TCDState(state.n, state.k, tuple(sorted(whites)), tuple(labels), state.boundary)


def tcd_neighbors(state: TCDState) -> list[tuple[TCDMove, TCDState]]:
    """All 2<->2 neighbors of a normalized diagram, sorted canonically."""
    moves = _white_moves(state) + _square_moves(state)
    moves.sort(key=lambda m: (m.kind, m.removed_whites, m.added_whites, m.center))
    return [(m, apply_tcd_move(state, m)) for m in moves]


def seed_state(p: DecoratedPermutation, extend_order: str = "colex") -> TCDState:
    return normalize(seed_triangulation(p, extend_order=extend_order))


def permutation_for_tcd(image) -> DecoratedPermutation:
    """Plain permutations get white (undecorated) fixed points."""
    image = tuple(image)
    fixed = [i for i in range(1, len(image) + 1) if image[i - 1] == i]
    return DecoratedPermutation.make(image, {i: WHITE for i in fixed})


def enumerate_tcd(
    p: DecoratedPermutation, vertex_cap: int = DEFAULT_VERTEX_CAP, extend_order: str = "colex"
) -> FlipGraph:
    seed = seed_state(p, extend_order=extend_order)
    visited = {seed.key(): 0}
    payload = [seed]
    depth = [0]
    edges_raw = set()
    frontier = [seed]
    level = 0
    while frontier:
        nxt_frontier = []
        for state in sorted(frontier, key=lambda s: s.key()):
            u = visited[state.key()]
            for move, nxt in tcd_neighbors(state):
                w = visited.get(nxt.key())
                if w is None:
                    if len(visited) >= vertex_cap:
                        raise ResourceCapExceeded(
                            "vertex cap exceeded enumerating diagrams",
                            partial_count=len(visited),
                        )
                    w = len(visited)
                    visited[nxt.key()] = w
                    payload.append(nxt)
                    depth.append(level + 1)
                    nxt_frontier.append(nxt)
                edges_raw.add((min(u, w), max(u, w), move.kind))
        frontier = nxt_frontier
        level += 1
    order = sorted(range(len(payload)), key=lambda i: payload[i].key())
    remap = {old: new for new, old in enumerate(order)}
    vertices = [payload[i].key() for i in order]
    payloads = [payload[i] for i in order]
    ranks = [depth[i] for i in order]
    edges = sorted(
        (min(remap[u], remap[w]), max(remap[u], remap[w]), kind) for u, w, kind in edges_raw
    )
    dedup = []
    seen = set()
    for u, v, kind in edges:
        if (u, v) not in seen:
            seen.add((u, v))
            dedup.append((u, v, kind))
    return FlipGraph(vertices, dedup, ranks, remap[0], None, payloads)


# ---------------------------------------------------------------------------
# the complex T


_T_CELL_LEN = {1: 5, 2: 10, 3: 5}
_T_CELL_KIND = {1: "pentagon_white", 2: "decagon", 3: "pentagon_square"}


def _embedded_present(state: TCDState, family: frozenset, walk5) -> bool:
    labs = state.label_set()
    if any(b not in labs for b in walk5):
        return False
    area = abs(shoelace2([pos(b) for b in walk5]))
    if area == 0:
        return False
    total = sum(
        triangle_area2(pos(a), pos(b), pos(c))
        for a, b, c in state.whites
        if a in family and b in family and c in family
    )
    for u, members in state.black_cliques().items():
        if all(m in family for m in members):
            total += abs(shoelace2([pos(m) for m in members]))
    return total == area


def _trace_cycle(graph: FlipGraph, index, vid: int, family: frozenset, expected: int):
    def restricted(v):
        out = []
        for move, nxt in tcd_neighbors(graph.payloads[v]):
            if move.support_labels() <= family:
                out.append(index[nxt.key()])
        return sorted(out)

    first = restricted(vid)
    if len(first) != 2:
        raise AssertionError("embedded diagram region is not on a 2-regular cycle")
    cycle = [vid]
    prev, cur = vid, first[0]
    while cur != vid:
        cycle.append(cur)
        nxt = [w for w in restricted(cur) if w != prev]
        if len(nxt) != 1 or len(cycle) > expected:
            raise AssertionError("embedded diagram cycle has unexpected shape")
        prev, cur = cur, nxt[0]
    if len(cycle) != expected:
        raise AssertionError("diagram cycle length %d != %d" % (len(cycle), expected))
    return cycle


def build_t_complex(p, vertex_cap: int = DEFAULT_VERTEX_CAP, extend_order: str = "colex"):
    """The 2-complex of triple crossing diagrams for a permutation.

    Accepts a plain one-line permutation or a DecoratedPermutation with
    white fixed points.  Returns (TwoComplex, info).
    """
    from .topology import TwoComplex

    if not isinstance(p, DecoratedPermutation):
        p = permutation_for_tcd(p)
    elif any(c != WHITE for _, c in p.fixed_color):
        raise ArgumentError("triple crossing diagrams have undecorated fixed points")
    graph = enumerate_tcd(p, vertex_cap=vertex_cap, extend_order=extend_order)
    index = {key: i for i, key in enumerate(graph.vertices)}
    k = graph.payloads[0].k

    cells = {}
    for vid, state in enumerate(graph.payloads):
        nbrs = tcd_neighbors(state)
        for (m1, s1), (m2, s2) in itertools.combinations(nbrs, 2):
            if m1.support_labels() & m2.support_labels():
                continue
            n1 = dict(tcd_neighbors(s1))
            n2 = dict(tcd_neighbors(s2))
            if m2 not in n1 or m1 not in n2:
                continue
            s12 = n1[m2]
            s21 = n2[m1]
            if s12.key() != s21.key():
                continue
            quad = (vid, index[s1.key()], index[s12.key()], index[s2.key()])
            if len(set(quad)) == 4:
                cells.setdefault(frozenset(quad), ("quad", quad))

    for h in (1, 2, 3):
        s_size = k - h
        if s_size < 0 or s_size > p.n - 5:
            continue
        sub_neck = combinat.necklace_of(combinat.cyclic_decorated(5, h))
        hsubsets = list(itertools.combinations(range(1, 6), h))
        for amask_elems in itertools.combinations(range(1, p.n + 1), 5):
            rest = [x for x in range(1, p.n + 1) if x not in amask_elems]
            psi = {i + 1: amask_elems[i] for i in range(5)}
            for s_elems in itertools.combinations(rest, s_size):
                smask = mask_of(s_elems)
                family = frozenset(smask | mask_of(psi[i] for i in kk) for kk in hsubsets)
                walk5 = tuple(smask | mask_of(psi[i] for i in sub_neck[j]) for j in range(1, 6))
                for vid, state in enumerate(graph.payloads):
                    if not _embedded_present(state, family, walk5):
                        continue
                    cycle = _trace_cycle(graph, index, vid, family, _T_CELL_LEN[h])
                    cells.setdefault(frozenset(cycle), (_T_CELL_KIND[h], tuple(cycle)))

    cell_list = [
        (name, cyc)
        for _, (name, cyc) in sorted(cells.items(), key=lambda kv: tuple(sorted(kv[0])))
    ]
    complex_ = TwoComplex.from_graph(
        graph.n_vertices,
        [(u, v) for u, v, _ in graph.edges],
        [cyc for _, cyc in cell_list],
    )
    info = {
        "kind": "T",
        "n_vertices": graph.n_vertices,
        "n_edges": graph.n_edges,
        "cells": [(name, list(cyc)) for name, cyc in cell_list],
        "graph": graph,
    }
    return complex_, info
