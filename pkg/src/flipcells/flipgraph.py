"""Flip graphs: vertices are canonical encodings, edges are labeled moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class FlipGraph:
    """A connected graph of configurations related by single flips/moves.

    `vertices[i]` is the canonical encoding of vertex i (vertex ids are
    assigned in sorted encoding order, so the structure is deterministic).
    `ranks[i]` is the BFS distance from the canonical seed; for zonotopal
    tilings this equals the poset rank.  `payloads[i]` holds the decoded
    object when the producer keeps it around.
    """

    vertices: list[Any]
    edges: list[tuple[int, int, Any]]
    ranks: list[int]
    min_vertex: int
    max_vertex: int | None = None
    payloads: list[Any] | None = None
    _adj: dict[int, list[int]] | None = field(default=None, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, list[int]]:
        if self._adj is None:
            adj: dict[int, list[int]] = {i: [] for i in range(len(self.vertices))}
            for u, v, _ in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = adj
        return self._adj

    def degrees(self) -> list[int]:
        return [len(v) for v in self.adjacency().values()]

    def is_single_cycle(self) -> bool:
        return (
            self.n_vertices >= 3
            and self.n_vertices == self.n_edges
            and all(d == 2 for d in self.degrees())
            and self._connected()
        )

    def _connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def to_dot(self, name: str = "flipgraph") -> str:
        """GraphViz text with rank-based layering hints."""
        lines = ["graph %s {" % name, "  node [shape=circle, fontsize=8];"]
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(i)
        for r in sorted(by_rank):
            members = " ".join(str(i) for i in by_rank[r])
            lines.append("  { rank=same; %s }" % members)
        for u, v in sorted((min(u, v), max(u, v)) for u, v, _ in self.edges):
            lines.append("  %d -- %d;" % (u, v))
        lines.append("}")
        return "\n".join(lines)
