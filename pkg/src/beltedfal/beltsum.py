"""Belted-sum surgery on painted crushtaceans and the canonical decomposition."""

from __future__ import annotations

import copy
import random
from dataclasses import dataclass
from typing import Callable, Literal, Optional

from .core import PaintedCrushtacean, canonical_code, from_dict, isomorphism, require_valid, to_dict, validate
from .cuts import ThreeEdgeCut, all_three_edge_cuts, nontrivial_cuts
from .fixtures import load

Orientation = Literal["preserve", "reverse"]


class SurgeryError(ValueError):
    """Precondition failure for split or belted sum."""


def once_painted_cuts(g: PaintedCrushtacean) -> list[ThreeEdgeCut]:
    return [k for k in nontrivial_cuts(g) if k.painted_count == 1]


def is_b_prime(g: PaintedCrushtacean) -> bool:
    require_valid(g)
    if g.c == 1:
        return True
    if g.c == 2:
        return g.twisted == g.painted
    return all(k.painted_count == 3 for k in nontrivial_cuts(g))


def b_prime_witness(g: PaintedCrushtacean) -> Optional[ThreeEdgeCut]:
    """Least once-painted non-trivial cut, if any."""
    cuts = once_painted_cuts(g)
    return cuts[0] if cuts else None


# ---------------------------------------------------------------------------
# split


@dataclass(frozen=True)
class Cap:
    """Where a split attached its cap: the cap vertex and its painted edge in the child."""

    vertex: int
    edge: int


@dataclass(frozen=True)
class _Split:
    children: tuple[PaintedCrushtacean, PaintedCrushtacean]
    edge_maps: tuple[dict[int, int], dict[int, int]]
    caps: tuple[Cap, Cap]


def _cap_side(g: PaintedCrushtacean, side: frozenset[int], cut: ThreeEdgeCut):
    verts = sorted(side)
    vmap = {v: i for i, v in enumerate(verts)}
    cap = len(verts)
    emap: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for e, (a, b) in enumerate(g.edges):
        if a in side and b in side:
            emap[e] = len(edges)
            edges.append((vmap[a], vmap[b]))
    painted_cut = [e for e in cut.edges if e in g.painted]
    plain_cut = [e for e in cut.edges if e not in g.painted]
    for e in painted_cut + plain_cut:
        a, b = g.edges[e]
        inside = a if a in side else b
        emap[e] = len(edges)
        edges.append((vmap[inside], cap))
    p, x, y = (emap[e] for e in painted_cut + plain_cut)
    rotation = [tuple(emap[e] for e in g.rotation[v]) for v in verts]
    painted = frozenset(emap[e] for e in g.painted if e in emap)
    twisted = frozenset(emap[e] for e in g.twisted if e in emap and e not in cut.edges)
    for order in ((p, x, y), (p, y, x)):
        child = PaintedCrushtacean(cap + 1, tuple(edges), tuple(rotation) + (order,), painted, twisted)
        if validate(child).ok:
            return child, emap, Cap(cap, p)
    raise RuntimeError("cap vertex admits no planar cyclic order")


def _split(g: PaintedCrushtacean, k: ThreeEdgeCut) -> _Split:
    require_valid(g)
    if k.trivial:
        raise SurgeryError("cannot split along a trivial cut")
    if k.painted_count != 1:
        raise SurgeryError(f"cut must carry exactly one painted edge, it carries {k.painted_count}")
    g1, m1, c1 = _cap_side(g, k.side_a, k)
    g2, m2, c2 = _cap_side(g, k.side_b, k)
    return _Split((g1, g2), (m1, m2), (c1, c2))


def split(g: PaintedCrushtacean, k: ThreeEdgeCut) -> tuple[PaintedCrushtacean, PaintedCrushtacean]:
    """Cut ``g`` along a once-painted non-trivial cut and cap both sides.

    Each side receives a new vertex joined to the three dangling edge ends;
    the painted one becomes a flat crossing circle.
    """
    return _split(g, k).children


# ---------------------------------------------------------------------------
# belted sum


def _around(g: PaintedCrushtacean, u: int, e: int) -> tuple[int, int, int]:
    rot = g.rotation[u]
    i = rot.index(e)
    return rot[i], rot[(i + 1) % 3], rot[(i + 2) % 3]


def _belted_sum(g1, e1, g2, e2, orient: Orientation, drop1=None, drop2=None):
    require_valid(g1)
    require_valid(g2)
    if orient not in ("preserve", "reverse"):
        raise SurgeryError(f"orient must be 'preserve' or 'reverse', got {orient!r}")
    for g, e, name in ((g1, e1, "first"), (g2, e2, "second")):
        if e not in g.painted:
            raise SurgeryError(f"edge {e} of the {name} summand is not painted")
    if orient == "reverse":
        g2 = g2.mirror()
    u1 = max(g1.edges[e1]) if drop1 is None else drop1
    u2 = max(g2.edges[e2]) if drop2 is None else drop2
    if u1 not in g1.edges[e1] or u2 not in g2.edges[e2]:
        raise SurgeryError("dropped vertex must be an endpoint of the chosen painted edge")
    _, p1, q1 = _around(g1, u1, e1)
    _, p2, q2 = _around(g2, u2, e2)

    n1 = g1.vertex_count - 1
    v1 = {v: (v if v < u1 else v - 1) for v in range(g1.vertex_count) if v != u1}
    v2 = {v: n1 + (v if v < u2 else v - 1) for v in range(g2.vertex_count) if v != u2}
    edges: list[tuple[int, int]] = []
    m1: dict[int, int] = {}
    m2: dict[int, int] = {}
    for g, vm, em, gone in ((g1, v1, m1, (e1, p1, q1)), (g2, v2, m2, (e2, p2, q2))):
        for e, (a, b) in enumerate(g.edges):
            if e not in gone:
                em[e] = len(edges)
                edges.append((vm[a], vm[b]))
    base = len(edges)

    def end(g, vm, e, u):
        return vm[g.other_end(e, u)]

    attempts = ((q2, p2), (p2, q2))
    for partner_p, partner_q in attempts:
        a1, a2 = dict(m1), dict(m2)
        new_edges = list(edges)
        a1[e1] = a2[e2] = base
        new_edges.append((end(g1, v1, e1, u1), end(g2, v2, e2, u2)))
        a1[p1] = a2[partner_p] = base + 1
        new_edges.append((end(g1, v1, p1, u1), end(g2, v2, partner_p, u2)))
        a1[q1] = a2[partner_q] = base + 2
        new_edges.append((end(g1, v1, q1, u1), end(g2, v2, partner_q, u2)))
        rotation = [None] * (n1 + g2.vertex_count - 1)
        for g, vm, am, u in ((g1, v1, a1, u1), (g2, v2, a2, u2)):
            for v in range(g.vertex_count):
                if v != u:
                    rotation[vm[v]] = tuple(am[e] for e in g.rotation[v])
        painted = {a1[e] for e in g1.painted} | {a2[e] for e in g2.painted}
        twisted = {a1[e] for e in g1.twisted if e != e1} | {a2[e] for e in g2.twisted if e != e2}
        out = PaintedCrushtacean(
            len(rotation), tuple(new_edges), tuple(rotation), frozenset(painted), frozenset(twisted)
        )
        if validate(out).ok:
            return out, a1, a2
    raise RuntimeError("belted sum produced no planar pairing")


def belted_sum(
    g1: PaintedCrushtacean,
    e1: int,
    g2: PaintedCrushtacean,
    e2: int,
    orient: Orientation = "preserve",
    drop1: int | None = None,
    drop2: int | None = None,
) -> PaintedCrushtacean:
    """Glue two crushtaceans along painted edges ``e1`` and ``e2``.

    The endpoints ``drop1``/``drop2`` (default: the higher-numbered endpoint)
    are deleted and their dangling edges joined; the two painted halves merge
    into one flat crossing circle.  ``orient="reverse"`` reflects ``g2``
    before gluing.
    """
    return _belted_sum(g1, e1, g2, e2, orient, drop1, drop2)[0]


# ---------------------------------------------------------------------------
# canonical decomposition


@dataclass
class SplitNode:
    crushtacean: PaintedCrushtacean
    cut: Optional[ThreeEdgeCut] = None
    children: tuple["SplitNode", ...] = ()
    caps: tuple[Cap, ...] = ()
    summand: Optional[int] = None
    refined: bool = False

    def leaves(self):
        if not self.children or self.refined:
            yield self
        else:
            for ch in self.children:
                yield from ch.leaves()

    def to_dict(self) -> dict:
        d = {"crushtacean": to_dict(self.crushtacean)}
        if self.cut is not None:
            d["cut"] = list(self.cut.edges)
            d["caps"] = [{"vertex": c.vertex, "edge": c.edge} for c in self.caps]
        if self.children:
            d["children"] = [ch.to_dict() for ch in self.children]
        if self.refined:
            d["refined"] = "whitehead"
        if self.summand is not None:
            d["summand"] = self.summand
        return d

    @classmethod
    def from_dict(cls, doc: dict) -> "SplitNode":
        g = from_dict(doc["crushtacean"])
        cut = None
        if "cut" in doc:
            edges = tuple(doc["cut"])
            cut = next((k for k in all_three_edge_cuts(g) if k.edges == edges), None)
            if cut is None:
                raise ValueError(f"recorded cut {list(edges)} is not a 3-edge cut of its crushtacean")
        return cls(
            g,
            cut,
            tuple(cls.from_dict(ch) for ch in doc.get("children", ())),
            tuple(Cap(c["vertex"], c["edge"]) for c in doc.get("caps", ())),
            doc.get("summand"),
            doc.get("refined") == "whitehead",
        )


@dataclass
class Decomposition:
    summands: tuple[PaintedCrushtacean, ...]
    tree: SplitNode
    new_circles: tuple[tuple[int, int], ...] = ()
    splits: int = 0

    def codes(self, include_twists: bool = False) -> list[str]:
        return sorted(canonical_code(s, include_twists) for s in self.summands)

    def to_dict(self) -> dict:
        return {
            "summands": [to_dict(s) for s in self.summands],
            "splits": self.splits,
            "new_circles": [list(x) for x in self.new_circles],
            "tree": self.tree.to_dict(),
        }


Chooser = Callable[[list[ThreeEdgeCut]], ThreeEdgeCut]


def canonical_decompose(g: PaintedCrushtacean, rng: random.Random | None = None) -> Decomposition:
    """Split along once-painted non-trivial cuts until none remain.

    By default the lexicographically least cut is taken at every step; with
    ``rng`` the cut is drawn at random (the resulting multiset of summands
    does not depend on the order).
    """
    require_valid(g)
    choose: Chooser = (lambda cuts: cuts[0]) if rng is None else rng.choice
    summands: list[PaintedCrushtacean] = []
    new_circles: list[tuple[int, int]] = []
    splits = 0

    def grow(h: PaintedCrushtacean, caps: frozenset[int]) -> SplitNode:
        nonlocal splits
        cands = once_painted_cuts(h)
        if not cands:
            node = SplitNode(h, summand=len(summands))
            summands.append(h)
            new_circles.extend((node.summand, e) for e in sorted(caps))
            return node
        k = choose(cands)
        s = _split(h, k)
        splits += 1
        kids = []
        for child, emap, cap in zip(s.children, s.edge_maps, s.caps):
            inherited = frozenset(emap[e] for e in caps if e in emap) | {cap.edge}
            kids.append(grow(child, inherited))
        return SplitNode(h, k, tuple(kids), s.caps)

    root = grow(g, frozenset())
    return Decomposition(tuple(summands), root, tuple(new_circles), splits)


def reassemble(node: SplitNode, leaves: dict[int, PaintedCrushtacean] | None = None) -> PaintedCrushtacean:
    """Undo a split tree bottom-up with preserving belted sums.

    ``leaves`` may substitute summands by index; each child is matched to
    its recorded crushtacean by isomorphism so the recorded caps apply.
    """
    if not node.children or node.refined:
        if leaves is not None and node.summand in leaves:
            return leaves[node.summand]
        return node.crushtacean
    parts = []
    for child, cap in zip(node.children, node.caps):
        h = reassemble(child, leaves)
        m = isomorphism(child.crushtacean, h)
        if m is None:
            raise SurgeryError(f"summand {child.summand} does not match the recorded tree")
        vmap, emap = m
        parts.append((h, emap[cap.edge], vmap[cap.vertex]))
    (g1, e1, u1), (g2, e2, u2) = parts
    return belted_sum(g1, e1, g2, e2, "preserve", u1, u2)


def _is_flat_borromean(g: PaintedCrushtacean) -> bool:
    return g.vertex_count == 4 and g.twisted != g.painted


def refine_to_whitehead(d: Decomposition) -> Decomposition:
    """Replace every Borromean summand with a flat circle by two Whitehead summands."""
    theta = load("THETA")
    tree = copy.deepcopy(d.tree)
    summands: list[PaintedCrushtacean] = []
    remap: dict[int, int] = {}
    for node in tree.leaves():
        h = node.crushtacean
        if _is_flat_borromean(h):
            node.refined = True
            node.children = tuple(SplitNode(theta, summand=len(summands) + i) for i in range(2))
            summands.extend((theta, theta))
        else:
            remap[node.summand] = len(summands)
            node.summand = len(summands)
            summands.append(h)
    for node in tree.leaves():
        if node.refined:
            node.summand = None
    circles = tuple((remap[i], e) for i, e in d.new_circles if i in remap)
    return Decomposition(tuple(summands), tree, circles, d.splits)
