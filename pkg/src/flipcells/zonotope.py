"""Fine zonotopal tilings of the cyclic zonotope Z(n, d).

A tiling is stored as one plus-mask per d-subset of [n]: the tile whose
zero set is the d-subset Z has X+ = plus-mask, X- = complement of both.
Subsets are bitmasks over [n] (bit i-1 represents element i) and are kept
in colexicographic order, which coincides with ascending mask order.

All geometry (determinants, slab tests, tile intersections) is exact:
integer arithmetic where possible, `fractions.Fraction` where division is
unavoidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ArgumentError, PreconditionError, ResourceCapExceeded, ValidationError
from .flipgraph import FlipGraph

DEFAULT_VERTEX_CAP = 200_000


def mask_of(elems) -> int:
    m = 0
    for i in elems:
        m |= 1 << (i - 1)
    return m


def elems_of(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class ZonotopeSpec:
    """Moment-curve data for Z(n, d) with parameters t_i = i.

    The degenerate case d = n (a single tile) is allowed here so that layer
    stacking can rebuild Z(3, 3); the public `zonotope_spec` stays strict.
    """

    n: int
    d: int

    def __post_init__(self):
        if self.d < 1 or self.d > self.n:
            raise ArgumentError("need 1 <= d <= n")

    @property
    def t(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def v(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(ti**p for p in range(self.d)) for ti in self.t)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @lru_cache(maxsize=None)
    def _dsubsets(self) -> tuple[tuple[int, ...], dict[int, int]]:
        masks = sorted(mask_of(c) for c in itertools.combinations(range(1, self.n + 1), self.d))
        return tuple(masks), {m: i for i, m in enumerate(masks)}

    @property
    def dsubsets(self) -> tuple[int, ...]:
        """Zero-set masks in colex (= ascending mask) order, one per tile."""
        return self._dsubsets()[0]

    def tile_index(self, zero_mask: int) -> int:
        return self._dsubsets()[1][zero_mask]

    @lru_cache(maxsize=None)
    def flip_sites_table(self) -> tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]:
        """For every (d+1)-subset S (ascending mask order): (smask, tile
        indices of the d+1 tiles with zero set S \\ {i}, element bits of the
        removed i, both in ascending element order)."""
        out = []
        for comb in itertools.combinations(range(1, self.n + 1), self.d + 1):
            smask = mask_of(comb)
            tiles = tuple(self.tile_index(smask & ~(1 << (i - 1))) for i in comb)
            bits = tuple(1 << (i - 1) for i in comb)
            out.append((smask, tiles, bits))
        out.sort(key=lambda rec: rec[0])
        return tuple(out)

    @lru_cache(maxsize=None)
    def flip_tables_np(self):
        sites = self.flip_sites_table()
        tiles_idx = np.array([rec[1] for rec in sites], dtype=np.int64)
        elem_bits = np.array([rec[2] for rec in sites], dtype=np.uint64)
        smask = np.array([rec[0] for rec in sites], dtype=np.uint64)
        return tiles_idx, elem_bits, smask

    def det_of(self, mask: int) -> int:
        """det of the moment-curve vectors indexed by a d-subset (Vandermonde)."""
        elems = elems_of(mask)
        prod = 1
        for a, b in itertools.combinations(elems, 2):
            prod *= self.t[b - 1] - self.t[a - 1]
        return prod

    def total_volume2(self) -> int:
        return sum(abs(self.det_of(m)) for m in self.dsubsets)


@dataclass(frozen=True)
class SignedSubset:
    """A pair of disjoint subsets (X+, X-) of [n]; X0 is the complement."""

    n: int
    plus: int
    minus: int

    def __post_init__(self):
        if self.plus & self.minus:
            raise ValidationError("plus and minus sets must be disjoint")
        full = (1 << self.n) - 1
        if (self.plus | self.minus) & ~full:
            raise ValidationError("signed subset exceeds the ground set")

    @property
    def zero(self) -> int:
        return ((1 << self.n) - 1) & ~(self.plus | self.minus)

    def sign_string(self) -> str:
        out = []
        for i in range(self.n):
            bit = 1 << i
            out.append("+" if self.plus & bit else "-" if self.minus & bit else "0")
        return "".join(out)

    @staticmethod
    def from_sign_string(s: str) -> "SignedSubset":
        plus = sum(1 << i for i, c in enumerate(s) if c == "+")
        minus = sum(1 << i for i, c in enumerate(s) if c == "-")
        return SignedSubset(len(s), plus, minus)


def zonotope_spec(n: int, d: int) -> ZonotopeSpec:
    if d < 1 or d >= n:
        raise ArgumentError("need 1 <= d < n")
    return ZonotopeSpec(n, d)


def to_tile(spec: ZonotopeSpec, x: SignedSubset) -> tuple[tuple[int, ...], ...]:
    """Vertex set of the tile tau_X: base point plus all subset sums of X0."""
    base = [0] * spec.d
    for i in elems_of(x.plus):
        for p in range(spec.d):
            base[p] += spec.v[i - 1][p]
    verts = set()
    zero_elems = elems_of(x.zero)
    for r in range(len(zero_elems) + 1):
        for comb in itertools.combinations(zero_elems, r):
            pt = list(base)
            for i in comb:
                for p in range(spec.d):
                    pt[p] += spec.v[i - 1][p]
            verts.add(tuple(pt))
    return tuple(sorted(verts))


@dataclass(frozen=True)
class Tiling:
    """A fine zonotopal tiling: one plus-mask per d-subset (colex order)."""

    spec: ZonotopeSpec
    plus: tuple[int, ...]

    def __post_init__(self):
        if len(self.plus) != len(self.spec.dsubsets):
            raise ValidationError("tiling must carry one tile per d-subset of [n]")
        for zero, plus in zip(self.spec.dsubsets, self.plus):
            if plus & zero:
                raise ValidationError("plus mask overlaps the zero set")

    def tile(self, zero_mask: int) -> SignedSubset:
        p = self.plus[self.spec.tile_index(zero_mask)]
        return SignedSubset(self.spec.n, p, self.spec.full_mask & ~(p | zero_mask))

    def tiles(self) -> tuple[SignedSubset, ...]:
        return tuple(self.tile(z) for z in self.spec.dsubsets)

    def key(self) -> tuple[int, ...]:
        return self.plus

    def sign_strings(self) -> list[str]:
        return [x.sign_string() for x in self.tiles()]

    @staticmethod
    def from_tiles(spec: ZonotopeSpec, tiles) -> "Tiling":
        by_zero = {}
        for x in tiles:
            z = x.zero
            if z in by_zero:
                raise ValidationError("two tiles share the zero set %s" % (elems_of(z),))
            by_zero[z] = x.plus
        try:
            plus = tuple(by_zero[z] for z in spec.dsubsets)
        except KeyError as exc:
            raise ValidationError("missing tile for zero set") from exc
        return Tiling(spec, plus)


@dataclass(frozen=True)
class FlipSite:
    """An available flip: the (d+1)-subset S, the common prefix S_i^+ and the
    alternating membership bits s_i (in ascending element order)."""

    smask: int
    prefix: int
    bits: tuple[int, ...]

    def elements(self) -> tuple[int, ...]:
        return elems_of(self.smask)


def minimal_tiling(spec: ZonotopeSpec) -> Tiling:
    """Bottom of the flip poset: lower faces of the lift with heights t_i^d.

    With heights h_i = t_i^d the supporting polynomial for the d-subset S is
    prod_{i in S}(t - t_i), so j joins X+ exactly when S has an odd number of
    elements above j.
    """
    plus = []
    for zero in spec.dsubsets:
        elems = elems_of(zero)
        p = 0
        for j in range(1, spec.n + 1):
            bit = 1 << (j - 1)
            if zero & bit:
                continue
            above = sum(1 for i in elems if i > j)
            if above % 2 == 1:
                p |= bit
        plus.append(p)
    return Tiling(spec, tuple(plus))


def available_flips(tiling: Tiling) -> tuple[FlipSite, ...]:
    """All flip sites available in the tiling (Def: common prefixes outside S
    and strictly alternating membership bits along S)."""
    spec = tiling.spec
    out = []
    for smask, tiles, bits in spec.flip_sites_table():
        prefix = tiling.plus[tiles[0]] & ~smask
        ok = True
        prev = None
        for ti, bit in zip(tiles, bits):
            p = tiling.plus[ti]
            if p & ~smask != prefix:
                ok = False
                break
            b = 1 if p & bit else 0
            if prev is not None and b == prev:
                ok = False
                break
            prev = b
        if ok:
            sbits = tuple(1 if tiling.plus[ti] & bit else 0 for ti, bit in zip(tiles, bits))
            out.append(FlipSite(smask, prefix, sbits))
    return tuple(out)


def apply_flip(tiling: Tiling, site: FlipSite) -> Tiling:
    """Toggle the membership of i between X_i^+ and X_i^- for every i in S."""
    spec = tiling.spec
    for avail in available_flips(tiling):
        if avail.smask == site.smask:
            break
    else:
        raise PreconditionError("flip %s is not available" % (site.elements(),))
    plus = list(tiling.plus)
    _, tiles, bits = next(rec for rec in spec.flip_sites_table() if rec[0] == site.smask)
    for ti, bit in zip(tiles, bits):
        plus[ti] ^= bit
    return Tiling(spec, tuple(plus))


# ---------------------------------------------------------------------------
# exact validation


def _normal_to(vectors: list[tuple[int, ...]], d: int) -> tuple[int, ...]:
    """Generalized cross product: integer normal to d-1 vectors in R^d."""
    if d == 1:
        return (1,)
    out = []
    idx = list(range(d))
    for i in range(d):
        cols = idx[:i] + idx[i + 1 :]
        minor = [[vec[c] for c in cols] for vec in vectors]
        out.append((-1) ** i * _int_det(minor))
    return tuple(out)


def _int_det(m: list[list[int]]) -> int:
    size = len(m)
    if size == 0:
        return 1
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(size):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _tile_base(spec: ZonotopeSpec, plus_mask: int) -> tuple[int, ...]:
    base = [0] * spec.d
    for i in elems_of(plus_mask):
        for p in range(spec.d):
            base[p] += spec.v[i - 1][p]
    return tuple(base)


def _zonotope_slabs(spec: ZonotopeSpec, base, gen_elems):
    """Slab constraints (nu, lo, hi) for base + sum [0, v_j], j in gen_elems."""
    gens = [spec.v[j - 1] for j in gen_elems]
    slabs = []
    seen = set()
    for comb in itertools.combinations(range(len(gens)), spec.d - 1):
        nu = _normal_to([gens[c] for c in comb], spec.d)
        if all(x == 0 for x in nu):
            continue
        if nu in seen or tuple(-x for x in nu) in seen:
            continue
        seen.add(nu)
        lo = hi = _dot(nu, base)
        for g in gens:
            s = _dot(nu, g)
            lo += min(0, s)
            hi += max(0, s)
        slabs.append((nu, lo, hi))
    return slabs


def _interiors_intersect(spec: ZonotopeSpec, x: SignedSubset, y: SignedSubset) -> bool:
    """Exact test: 0 lies strictly inside the Minkowski difference tau_X - tau_Y."""
    gen_elems = list(elems_of(x.zero)) + list(elems_of(y.zero))
    bx = _tile_base(spec, x.plus)
    by = _tile_base(spec, y.plus)
    base = tuple(
        bx[p] - by[p] - sum(spec.v[j - 1][p] for j in elems_of(y.zero)) for p in range(spec.d)
    )
    for nu, lo, hi in _zonotope_slabs(spec, base, gen_elems):
        if not (lo < 0 < hi):
            return False
    return True


def _tile_hrep(spec: ZonotopeSpec, x: SignedSubset):
    base = _tile_base(spec, x.plus)
    return _zonotope_slabs(spec, base, list(elems_of(x.zero)))


def _intersection_vertices(spec: ZonotopeSpec, x: SignedSubset, y: SignedSubset):
    """Vertices of tau_X n tau_Y by exact hyperplane enumeration."""
    slabs = _tile_hrep(spec, x) + _tile_hrep(spec, y)
    planes = []
    for nu, lo, hi in slabs:
        planes.append((nu, lo))
        planes.append((nu, hi))
    verts = set()
    for comb in itertools.combinations(planes, spec.d):
        mat = [[Fraction(c) for c in nu] for nu, _ in comb]
        rhs = [Fraction(c) for _, c in comb]
        sol = _solve_square(mat, rhs)
        if sol is None:
            continue
        if all(lo <= _dot_frac(nu, sol) <= hi for nu, lo, hi in slabs):
            verts.add(tuple(sol))
    return verts


def _solve_square(mat, rhs):
    d = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(d):
        piv = None
        for r in range(col, d):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [v / f for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                g = aug[r][col]
                aug[r] = [v - g * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][d] for r in range(d)]


def _dot_frac(nu, point) -> Fraction:
    return sum(Fraction(a) * b for a, b in zip(nu, point))


def _common_face(x: SignedSubset, y: SignedSubset) -> SignedSubset | None:
    """The maximal signed subset that is a face of both tiles, or None if the
    sign patterns conflict."""
    plus = x.plus | y.plus
    minus = x.minus | y.minus
    if plus & minus:
        return None
    return SignedSubset(x.n, plus, minus)


@dataclass
class ValidationReport:
    ok: bool
    fine: bool
    one_tile_per_zero_set: bool
    volume2: int
    expected_volume2: int
    inside_zonotope: bool
    failures: list[str]

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "ok": self.ok,
            "fine": self.fine,
            "one_tile_per_zero_set": self.one_tile_per_zero_set,
            "volume2": self.volume2,
            "expected_volume2": self.expected_volume2,
            "inside_zonotope": self.inside_zonotope,
            "failures": self.failures,
        }


def validate_tiling(spec: ZonotopeSpec, tiles) -> ValidationReport:
    """Exact check of the fine-tiling conditions for a collection of tiles.

    Accepts a `Tiling` or any iterable of `SignedSubset`.  Failures are
    reported, never raised.
    """
    if isinstance(tiles, Tiling):
        tile_list = list(tiles.tiles())
    else:
        tile_list = list(tiles)
    failures: list[str] = []

    fine = all(bin(x.zero).count("1") == spec.d for x in tile_list)
    if not fine:
        failures.append("a top tile has |X0| != d")

    zeros = [x.zero for x in tile_list]
    one_per = len(set(zeros)) == len(zeros) and set(zeros) == set(spec.dsubsets)
    if not one_per:
        failures.append("tiles are not in bijection with the d-subsets of [n]")

    volume2 = sum(abs(spec.det_of(x.zero)) for x in tile_list if bin(x.zero).count("1") == spec.d)
    expected = spec.total_volume2()
    if volume2 != expected:
        failures.append("volume mismatch: %d != %d" % (volume2, expected))

    # containment of every tile vertex in Z(n, d)
    outer = _zonotope_slabs(spec, tuple([0] * spec.d), list(range(1, spec.n + 1)))
    inside = True
    for x in tile_list:
        for pt in to_tile(spec, x):
            if not all(lo <= _dot(nu, pt) <= hi for nu, lo, hi in outer):
                inside = False
                failures.append("tile %s leaves the zonotope" % x.sign_string())
                break
        if not inside:
            break

    for x, y in itertools.combinations(tile_list, 2):
        if _interiors_intersect(spec, x, y):
            failures.append(
                "tiles %s and %s have overlapping interiors" % (x.sign_string(), y.sign_string())
            )
            continue
        inter = _intersection_vertices(spec, x, y)
        z = _common_face(x, y)
        if z is None:
            if inter:
                failures.append(
                    "tiles %s and %s intersect but have no common face"
                    % (x.sign_string(), y.sign_string())
                )
            continue
        expected_verts = {
            tuple(Fraction(c) for c in pt) for pt in to_tile(spec, z)
        }
        if inter != expected_verts:
            failures.append(
                "intersection of %s and %s is not their common face"
                % (x.sign_string(), y.sign_string())
            )

    ok = not failures
    return ValidationReport(ok, fine, one_per, volume2, expected, inside, failures)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_tilings(spec: ZonotopeSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> FlipGraph:
    """BFS closure of the flip relation from the minimal tiling.

    Vertices are re-indexed in sorted key order so the output is
    deterministic.  Asserts gradedness and the uniqueness of the extremes.
    """
    tiles_idx, elem_bits, smask_np = spec.flip_tables_np()
    sites = spec.flip_sites_table()
    start = minimal_tiling(spec).plus
    visited: dict[tuple[int, ...], int] = {start: 0}
    depth: list[int] = [0]
    keys: list[tuple[int, ...]] = [start]
    edges_raw: set[tuple[int, int, int]] = set()
    frontier = [start]
    level = 0
    while frontier:
        mat = np.array(frontier, dtype=np.uint64)
        avail = _kernels.scan_available(mat, tiles_idx, elem_bits, smask_np)
        next_frontier = []
        for row, key in enumerate(frontier):
            u = visited[key]
            for s in np.flatnonzero(avail[row]):
                smask, tls, bits = sites[s]
                new = list(key)
                for ti, bit in zip(tls, bits):
                    new[ti] ^= bit
                nkey = tuple(new)
                w = visited.get(nkey)
                if w is None:
                    if len(visited) >= vertex_cap:
                        raise ResourceCapExceeded(
                            "vertex cap %d exceeded enumerating Z(%d,%d)"
                            % (vertex_cap, spec.n, spec.d),
                            partial_count=len(visited),
                        )
                    w = len(visited)
                    visited[nkey] = w
                    keys.append(nkey)
                    depth.append(level + 1)
                    next_frontier.append(nkey)
                edges_raw.add((min(u, w), max(u, w), smask))
        frontier = sorted(next_frontier)
        level += 1

    order = sorted(range(len(keys)), key=lambda i: keys[i])
    remap = {old: new for new, old in enumerate(order)}
    vertices = [keys[i] for i in order]
    ranks = [depth[i] for i in order]
    edges = sorted(
        (min(remap[u], remap[w]), max(remap[u], remap[w]), smask) for u, w, smask in edges_raw
    )
    for u, w, _ in edges:
        if abs(ranks[u] - ranks[w]) != 1:
            raise AssertionError("flip graph is not graded by BFS depth")
    top = spec_top_rank(spec)
    minima = [i for i, r in enumerate(ranks) if r == 0]
    maxima = [i for i, r in enumerate(ranks) if r == top]
    if len(minima) != 1 or len(maxima) != 1 or max(ranks) != top:
        raise AssertionError("flip poset extremes are not unique at ranks 0 and C(n,d+1)")
    payloads = [Tiling(spec, key) for key in vertices]
    return FlipGraph(vertices, edges, ranks, minima[0], maxima[0], payloads)


def spec_top_rank(spec: ZonotopeSpec) -> int:
    import math

    return math.comb(spec.n, spec.d + 1)


# ---------------------------------------------------------------------------
# the flip 2-complex: commuting squares and coarse-tile (2d+4)-gons


def build_z_complex(graph: FlipGraph):
    """2-cells over the flip graph: operationally commuting flip pairs give
    quadrilaterals; coarse (d+2)-subset tiles give (2d+4)-gon cycles.

    Returns (TwoComplex, cells) where cells is a list of (kind, vertex cycle).
    """
    from .topology import TwoComplex

    assert graph.payloads, "build_z_complex needs tiling payloads"
    spec: ZonotopeSpec = graph.payloads[0].spec
    index = {key: i for i, key in enumerate(graph.vertices)}
    flips_at = [available_flips(t) for t in graph.payloads]

    cells: dict[frozenset[int], tuple[str, tuple[int, ...]]] = {}

    for vid, tiling in enumerate(graph.payloads):
        sites = flips_at[vid]
        for a, b in itertools.combinations(range(len(sites)), 2):
            sa, sb = sites[a], sites[b]
            ta = apply_flip(tiling, sa)
            tb = apply_flip(tiling, sb)
            ia, ib = index[ta.key()], index[tb.key()]
            if not any(s.smask == sb.smask for s in flips_at[ia]):
                continue
            if not any(s.smask == sa.smask for s in flips_at[ib]):
                continue
            tab = apply_flip(ta, next(s for s in flips_at[ia] if s.smask == sb.smask))
            tba = apply_flip(tb, next(s for s in flips_at[ib] if s.smask == sa.smask))
            if tab.key() != tba.key():
                continue
            iab = index[tab.key()]
            quad = (vid, ia, iab, ib)
            if len(set(quad)) == 4:
                cells.setdefault(frozenset(quad), ("quad", quad))

    coarse = [
        mask_of(c) for c in itertools.combinations(range(1, spec.n + 1), spec.d + 2)
    ]
    member_tiles = {
        tmask: [spec.tile_index(m) for m in spec.dsubsets if m & ~tmask == 0] for tmask in coarse
    }
    expected_len = 2 * spec.d + 4
    for vid, tiling in enumerate(graph.payloads):
        for tmask in coarse:
            tls = member_tiles[tmask]
            prefixes = {tiling.plus[ti] & ~tmask for ti in tls}
            if len(prefixes) != 1:
                continue
            cycle = _trace_coarse_cycle(graph, index, flips_at, vid, tmask, expected_len)
            cells.setdefault(frozenset(cycle), ("gon%d" % expected_len, tuple(cycle)))

    cell_list = sorted(cells.values(), key=lambda kc: tuple(sorted(kc[1])))
    complex_ = TwoComplex.from_graph(
        graph.n_vertices,
        [(u, v) for u, v, _ in graph.edges],
        [cyc for _, cyc in cell_list],
    )
    return complex_, cell_list


def _trace_coarse_cycle(graph, index, flips_at, vid, tmask, expected_len):
    """Walk the cycle of tilings reachable by flips supported inside tmask."""
    def restricted(v):
        out = []
        for s in flips_at[v]:
            if s.smask & ~tmask == 0:
                t = apply_flip(graph.payloads[v], s)
                out.append(index[t.key()])
        return out

    start_next = restricted(vid)
    if len(start_next) != 2:
        raise AssertionError("coarse sub-tiling is not on a 2-regular cycle")
    cycle = [vid]
    prev, cur = vid, start_next[0]
    while cur != vid:
        cycle.append(cur)
        nbrs = [w for w in restricted(cur) if w != prev]
        if len(nbrs) != 1:
            raise AssertionError("coarse sub-tiling is not on a 2-regular cycle")
        prev, cur = cur, nbrs[0]
        if len(cycle) > expected_len:
            raise AssertionError("coarse cycle longer than 2d+4")
    if len(cycle) != expected_len:
        raise AssertionError("coarse cycle shorter than 2d+4")
    return cycle


# ---------------------------------------------------------------------------
# JSON export


def tiling_to_json(tiling: Tiling) -> dict:
    return {
        "schema_version": 1,
        "n": tiling.spec.n,
        "d": tiling.spec.d,
        "tiles": tiling.sign_strings(),
    }


def tiling_from_json(data: dict) -> Tiling:
    spec = ZonotopeSpec(data["n"], data["d"])
    tiles = [SignedSubset.from_sign_string(s) for s in data["tiles"]]
    return Tiling.from_tiles(spec, tiles)


def flipgraph_to_json(graph: FlipGraph, spec: ZonotopeSpec | None = None) -> dict:
    edges = [
        {"u": u, "v": v, "flip": list(elems_of(label)) if isinstance(label, int) else str(label)}
        for u, v, label in graph.edges
    ]
    out = {
        "schema_version": 1,
        "n_vertices": graph.n_vertices,
        "edges": edges,
        "ranks": list(graph.ranks),
        "min_vertex": graph.min_vertex,
        "max_vertex": graph.max_vertex,
    }
    if spec is not None and graph.payloads:
        out["vertices"] = [t.sign_strings() for t in graph.payloads]
    return out
