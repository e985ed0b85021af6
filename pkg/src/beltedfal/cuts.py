"""3-edge cuts of crushtaceans and separating triangles of nerves."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Nerve, PaintedCrushtacean, require_valid


@dataclass(frozen=True)
class ThreeEdgeCut:
    edges: tuple[int, int, int]
    side_a: frozenset[int]
    side_b: frozenset[int]
    painted_count: int
    trivial: bool

    def painted_edges(self, g: PaintedCrushtacean) -> tuple[int, ...]:
        return tuple(e for e in self.edges if e in g.painted)

    def to_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "side_a": sorted(self.side_a),
            "side_b": sorted(self.side_b),
            "painted_count": self.painted_count,
            "trivial": self.trivial,
        }


def components(n: int, edges, removed=frozenset()) -> list[frozenset[int]]:
    """Connected components after deleting the edge ids in ``removed``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (a, b) in enumerate(edges):
        if i not in removed:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, set[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def all_three_edge_cuts(g: PaintedCrushtacean) -> list[ThreeEdgeCut]:
    """Every edge triple whose removal disconnects ``g``, in lexicographic order."""
    require_valid(g)
    out = []
    for triple in combinations(range(g.edge_count), 3):
        parts = components(g.vertex_count, g.edges, frozenset(triple))
        if len(parts) != 2:
            continue
        a, b = parts
        # a 3-edge-connected cubic graph splits into exactly two sides, every cut edge crossing
        if not all((g.edges[e][0] in a) != (g.edges[e][1] in a) for e in triple):
            continue
        painted = sum(e in g.painted for e in triple)
        out.append(ThreeEdgeCut(triple, a, b, painted, min(len(a), len(b)) == 1))
    return out


def nontrivial_cuts(g: PaintedCrushtacean) -> list[ThreeEdgeCut]:
    return [k for k in all_three_edge_cuts(g) if not k.trivial]


def separating_triangles(n: Nerve) -> list[tuple[int, int, int]]:
    """3-cliques of the nerve that do not bound a face."""
    facial = {frozenset(f) for f in n.faces}
    adj = n.adjacency
    out = []
    for a in range(n.vertex_count):
        for b in sorted(x for x in adj[a] if x > a):
            for c in sorted(x for x in adj[a] & adj[b] if x > b):
                if frozenset((a, b, c)) not in facial:
                    out.append((a, b, c))
    return out


def triangle_edges(n: Nerve, tri) -> tuple[int, int, int]:
    """Crushtacean edges dual to the three sides of a nerve triangle."""
    a, b, c = tri
    return tuple(sorted(n.dual_edge[n.edge_between(x, y)] for x, y in ((a, b), (b, c), (a, c))))
