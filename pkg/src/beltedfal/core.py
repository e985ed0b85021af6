"""Painted crushtaceans as combinatorial maps, their dual nerves, and the file codec.

A crushtacean is stored as a rotation system: ``edges[e]`` is the unordered
pair of endpoints of edge ``e`` and ``rotation[v]`` lists the three edges at
``v`` in counterclockwise order.  Darts are numbered ``2*e`` (at
``edges[e][0]``) and ``2*e + 1`` (at ``edges[e][1]``), so the edge involution
is ``d ^ 1``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

FORMAT_TAG = "crushtacean/1"


class InvalidCrushtacean(ValueError):
    """Raised when an operation receives a crushtacean that fails validation."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid crushtacean: " + "; ".join(report.violations))
        self.report = report


class ParseError(ValueError):
    """Malformed crushtacean document."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


@dataclass(frozen=True)
class PaintedCrushtacean:
    """A cubic planar map with a painted perfect matching and twist flags.

    The number of crossing circles of the associated fully augmented link is
    the number of painted edges.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]
    painted: frozenset[int]
    twisted: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(self, "rotation", tuple(tuple(int(x) for x in r) for r in self.rotation))
        object.__setattr__(self, "painted", frozenset(int(x) for x in self.painted))
        object.__setattr__(self, "twisted", frozenset(int(x) for x in self.twisted))

    @property
    def c(self) -> int:
        return len(self.painted)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def dart_vertex(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def dart_at(self, v: int, e: int) -> int:
        a, b = self.edges[e]
        if a == v:
            return 2 * e
        if b == v:
            return 2 * e + 1
        raise ValueError(f"edge {e} is not incident to vertex {v}")

    @cached_property
    def _succ(self) -> tuple[int, ...]:
        succ = [-1] * (2 * len(self.edges))
        for v, rot in enumerate(self.rotation):
            darts = [self.dart_at(v, e) for e in rot]
            for i, d in enumerate(darts):
                succ[d] = darts[(i + 1) % len(darts)]
        return tuple(succ)

    @cached_property
    def _pred(self) -> tuple[int, ...]:
        pred = [-1] * len(self._succ)
        for d, s in enumerate(self._succ):
            pred[s] = d
        return tuple(pred)

    def succ(self, d: int) -> int:
        """Next dart counterclockwise around the vertex of ``d``."""
        return self._succ[d]

    def pred(self, d: int) -> int:
        return self._pred[d]

    @cached_property
    def face_darts(self) -> tuple[tuple[int, ...], ...]:
        """Face boundary walks; dart ``d`` is followed by ``succ(d ^ 1)``."""
        return _trace_faces(self._succ)

    @cached_property
    def dart_face(self) -> tuple[int, ...]:
        owner = [0] * len(self._succ)
        for f, darts in enumerate(self.face_darts):
            for d in darts:
                owner[d] = f
        return tuple(owner)

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self.rotation[v]]

    def painted_edge_at(self, v: int) -> int:
        for e in self.rotation[v]:
            if e in self.painted:
                return e
        raise ValueError(f"vertex {v} has no painted edge")

    def with_twists(self, twisted: Iterable[int]) -> "PaintedCrushtacean":
        return PaintedCrushtacean(self.vertex_count, self.edges, self.rotation, self.painted, frozenset(twisted))

    def mirror(self) -> "PaintedCrushtacean":
        """Same map with every cyclic order reversed (reflection of the sphere)."""
        rot = tuple((r[0],) + tuple(reversed(r[1:])) for r in self.rotation)
        return PaintedCrushtacean(self.vertex_count, self.edges, rot, self.painted, self.twisted)


def _trace_faces(succ: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(succ)
    faces = []
    for start in range(len(succ)):
        if seen[start] or succ[start] < 0:
            continue
        walk = []
        d = start
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(tuple(walk))
    return tuple(faces)


# ---------------------------------------------------------------------------
# validation


def validate(g: PaintedCrushtacean) -> ValidationReport:
    """Check every structural invariant; never raises on bad data."""
    bad: list[str] = []
    n = g.vertex_count
    if not isinstance(n, int) or n < 2 or n % 2:
        bad.append("vertex count: must be an even integer >= 2")
        return ValidationReport(False, tuple(bad))
    for i, e in enumerate(g.edges):
        if len(e) != 2 or not all(0 <= x < n for x in e):
            bad.append(f"edges: edge {i} has endpoints out of range")
        elif e[0] == e[1]:
            bad.append(f"loops: edge {i} is a loop")
    if bad:
        return ValidationReport(False, tuple(bad))
    if len(g.rotation) != n:
        bad.append(f"rotation: expected {n} cyclic orders, got {len(g.rotation)}")
        return ValidationReport(False, tuple(bad))

    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (a, b) in enumerate(g.edges):
        incident[a].append(i)
        incident[b].append(i)
    cubic = True
    for v in range(n):
        if len(incident[v]) != 3:
            bad.append(f"3-regular: vertex {v} has degree {len(incident[v])}")
            cubic = False
        elif sorted(g.rotation[v]) != sorted(incident[v]):
            bad.append(f"rotation: vertex {v} rotation {list(g.rotation[v])} does not list its incident edges")
            cubic = False
    if not cubic:
        return ValidationReport(False, tuple(bad))

    if not _is_connected(n, g.edges):
        bad.append("connected: graph is disconnected")
    else:
        f = len(g.face_darts)
        euler = n - len(g.edges) + f
        if euler != 2:
            bad.append(f"genus 0: V - E + F = {euler} (F = {f}), expected 2")

    if not all(0 <= e < len(g.edges) for e in g.painted):
        bad.append("perfect matching: painted edge id out of range")
    else:
        hits = [0] * n
        for e in g.painted:
            a, b = g.edges[e]
            hits[a] += 1
            hits[b] += 1
        wrong = [v for v in range(n) if hits[v] != 1]
        if wrong:
            bad.append(f"perfect matching: vertices {wrong} are not covered by exactly one painted edge")
    if not g.twisted <= g.painted:
        bad.append("twisted subset of painted: twisted edges must be painted")

    pairs = [tuple(sorted(e)) for e in g.edges]
    if n > 2 and len(set(pairs)) != len(pairs):
        bad.append("parallel edges: only the theta graph (2 vertices) may have parallel edges")

    if not any(b.startswith(("connected", "genus")) for b in bad):
        faces = g.dart_face
        nerve_pairs = [tuple(sorted((faces[2 * e], faces[2 * e + 1]))) for e in range(len(g.edges))]
        if len(g.face_darts) >= 4:
            if any(a == b for a, b in nerve_pairs) or len(set(nerve_pairs)) != len(nerve_pairs):
                bad.append("simple nerve: dual triangulation has a loop or a multiple edge")
    return ValidationReport(not bad, tuple(bad))


def _is_connected(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


def require_valid(g: PaintedCrushtacean) -> None:
    report = validate(g)
    if not report.ok:
        raise InvalidCrushtacean(report)


# ---------------------------------------------------------------------------
# nerve duality


@dataclass(frozen=True)
class Nerve:
    """Dual triangulation: one vertex per crushtacean face (a circle of the packing).

    ``faces`` are vertex triples, consistently oriented when produced by
    :func:`nerve_of`.  ``dual_edge[k]`` is the crushtacean edge crossing
    nerve edge ``k``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int, int], ...]
    painted: frozenset[int] = field(default_factory=frozenset)
    dual_edge: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(self, "faces", tuple(tuple(int(x) for x in f) for f in self.faces))
        object.__setattr__(self, "painted", frozenset(int(x) for x in self.painted))
        if not self.dual_edge:
            object.__setattr__(self, "dual_edge", tuple(range(len(self.edges))))
        else:
            object.__setattr__(self, "dual_edge", tuple(int(x) for x in self.dual_edge))

    @property
    def circles(self) -> range:
        return range(self.vertex_count)

    @cached_property
    def edge_index(self) -> dict[frozenset, int]:
        return {frozenset(e): i for i, e in enumerate(self.edges)}

    def edge_between(self, a: int, b: int) -> int | None:
        return self.edge_index.get(frozenset((a, b)))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def edge_faces(self) -> tuple[tuple[int, ...], ...]:
        """Indices of the faces containing each nerve edge."""
        out: list[list[int]] = [[] for _ in self.edges]
        for fi, (a, b, c) in enumerate(self.faces):
            for x, y in ((a, b), (b, c), (c, a)):
                k = self.edge_between(x, y)
                if k is not None:
                    out[k].append(fi)
        return tuple(tuple(x) for x in out)

    def check(self, painted: bool = True) -> list[str]:
        """Nerve invariants; returns the list of violations.

        With ``painted=False`` the one-painted-edge-per-face rule is skipped,
        which is what unpainted triangulation skeletons need.
        """
        bad = []
        for fi, f in enumerate(self.faces):
            if len(set(f)) != 3:
                bad.append(f"face {fi} is not a triangle on 3 distinct vertices")
                continue
            ks = [self.edge_between(x, y) for x, y in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0]))]
            if None in ks:
                bad.append(f"face {fi} uses a non-edge")
            elif painted and sum(k in self.painted for k in ks) != 1:
                bad.append(f"face {fi} does not carry exactly one painted edge")
        for k, fs in enumerate(self.edge_faces):
            if len(fs) != 2:
                bad.append(f"edge {k} lies on {len(fs)} faces")
        if self.vertex_count - len(self.edges) + len(self.faces) != 2:
            bad.append("V - E + F != 2")
        if sorted(self.dual_edge) != list(range(len(self.edges))):
            bad.append("dual_edge is not a bijection")
        return bad

    def skeleton(self) -> "Nerve":
        return Nerve(self.vertex_count, self.edges, self.faces, frozenset(), self.dual_edge)


def nerve_of(g: PaintedCrushtacean) -> Nerve:
    require_valid(g)
    fid = g.dart_face
    edges = tuple((fid[2 * e], fid[2 * e + 1]) for e in range(g.edge_count))
    faces = []
    for v in range(g.vertex_count):
        darts = [g.dart_at(v, e) for e in g.rotation[v]]
        faces.append(tuple(fid[d] for d in darts))
    return Nerve(len(g.face_darts), edges, tuple(faces), g.painted, tuple(range(g.edge_count)))


def orient_faces(n: Nerve) -> tuple[tuple[int, int, int], ...]:
    """Reorient the faces coherently (every edge traversed once each way)."""
    faces = list(n.faces)
    if not faces:
        return ()
    done = [False] * len(faces)
    done[0] = True
    todo = deque([0])
    while todo:
        fi = todo.popleft()
        a, b, c = faces[fi]
        for x, y in ((a, b), (b, c), (c, a)):
            k = n.edge_between(x, y)
            for fj in n.edge_faces[k]:
                if fj == fi or done[fj]:
                    continue
                p, q, r = faces[fj]
                directed = {(p, q), (q, r), (r, p)}
                if (x, y) in directed:
                    faces[fj] = (p, r, q)
                done[fj] = True
                todo.append(fj)
    if not all(done):
        raise ValueError("nerve faces are not connected")
    for fi, (a, b, c) in enumerate(faces):
        for x, y in ((a, b), (b, c), (c, a)):
            k = n.edge_between(x, y)
            for fj in n.edge_faces[k]:
                if fj != fi and (x, y) in _directed(faces[fj]):
                    raise ValueError("nerve is not orientable")
    return tuple(faces)


def _directed(f):
    a, b, c = f
    return {(a, b), (b, c), (c, a)}


def crushtacean_of(n: Nerve, painted: bool = True) -> PaintedCrushtacean:
    """Planar dual of a painted triangulation; all crossing circles come out flat.

    ``painted=False`` dualises a bare triangulation into an unpainted cubic map.
    """
    bad = n.check(painted)
    if bad:
        raise ValueError("not a painted triangulation: " + "; ".join(bad))
    faces = orient_faces(n)
    edges: list[tuple[int, int] | None] = [None] * len(n.edges)
    for k, fs in enumerate(n.edge_faces):
        edges[n.dual_edge[k]] = (fs[0], fs[1])
    rotation = []
    for a, b, c in faces:
        rotation.append(tuple(n.dual_edge[n.edge_between(x, y)] for x, y in ((a, b), (b, c), (c, a))))
    painted = frozenset(n.dual_edge[k] for k in n.painted)
    return PaintedCrushtacean(len(faces), tuple(edges), tuple(rotation), painted, frozenset())


# ---------------------------------------------------------------------------
# canonical forms


def _edge_flags(g: PaintedCrushtacean, include_twists: bool) -> list[int]:
    flags = [0] * g.edge_count
    for e in g.painted:
        flags[e] = 2 if include_twists and e in g.twisted else 1
    return flags


def _bfs_code(g: PaintedCrushtacean, flags, start: int, reverse: bool):
    step = g._pred if reverse else g._succ
    label = {g.dart_vertex(start): 0}
    entry = [start]
    code: list[int] = []
    dart_order: list[int] = []
    i = 0
    while i < len(entry):
        d = entry[i]
        for _ in range(3):
            w = g.dart_vertex(d ^ 1)
            if w not in label:
                label[w] = len(entry)
                entry.append(d ^ 1)
            code.append(label[w])
            code.append(flags[d >> 1])
            dart_order.append(d)
            d = step[d]
        i += 1
    return code, label, dart_order


def _best_start(g: PaintedCrushtacean, include_twists: bool, allow_reflection: bool):
    flags = _edge_flags(g, include_twists)
    best = None
    for reverse in (False, True) if allow_reflection else (False,):
        for start in range(2 * g.edge_count):
            code, label, order = _bfs_code(g, flags, start, reverse)
            if best is None or code < best[0]:
                best = (code, label, order)
    return best


def canonical_code(g: PaintedCrushtacean, include_twists: bool = False, allow_reflection: bool = True) -> str:
    """Isomorphism invariant of the painted map.

    Minimises a breadth-first dart traversal code over every starting dart
    and, unless ``allow_reflection`` is false, both orientations.
    """
    code, _, _ = _best_start(g, include_twists, allow_reflection)
    return f"{g.vertex_count}:" + ",".join(map(str, code))


def skeleton_code(g: PaintedCrushtacean) -> str:
    """Code of the unpainted cubic map (reflections identified)."""
    return canonical_code(PaintedCrushtacean(g.vertex_count, g.edges, g.rotation, frozenset()), False, True)


def isomorphism(g: PaintedCrushtacean, h: PaintedCrushtacean, include_twists: bool = False):
    """Vertex and edge maps ``g -> h`` realising an isomorphism, or ``None``."""
    bg = _best_start(g, include_twists, True)
    bh = _best_start(h, include_twists, True)
    if bg[0] != bh[0] or g.vertex_count != h.vertex_count:
        return None
    inv_h = {lab: v for v, lab in bh[1].items()}
    vmap = {v: inv_h[lab] for v, lab in bg[1].items()}
    emap = {}
    for dg, dh in zip(bg[2], bh[2]):
        emap[dg >> 1] = dh >> 1
    return vmap, emap


# ---------------------------------------------------------------------------
# codec

_FIELDS = ("format", "vertices", "edges", "rotation", "painted", "twisted")


def to_dict(g: PaintedCrushtacean) -> dict:
    return {
        "format": FORMAT_TAG,
        "vertices": g.vertex_count,
        "edges": [list(e) for e in g.edges],
        "rotation": [list(r) for r in g.rotation],
        "painted": sorted(g.painted),
        "twisted": sorted(g.twisted),
    }


def serialize(g: PaintedCrushtacean) -> str:
    d = to_dict(g)
    lines = ["{"]
    for i, key in enumerate(_FIELDS):
        sep = "," if i < len(_FIELDS) - 1 else ""
        lines.append(f'  "{key}": {json.dumps(d[key], separators=(",", ":"))}{sep}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _field_line(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return i
    return None


def parse(text: str) -> PaintedCrushtacean:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return from_dict(doc, text)


def from_dict(doc, text: str = "") -> PaintedCrushtacean:
    def fail(msg, key=None):
        raise ParseError(msg, line=_field_line(text, key) if key and text else None, field=key)

    if not isinstance(doc, dict):
        fail("document must be a JSON object")
    for key in _FIELDS:
        if key not in doc:
            raise ParseError(f"missing field '{key}'", field=key)
    if doc["format"] != FORMAT_TAG:
        fail(f"unsupported format {doc['format']!r}, expected {FORMAT_TAG!r}", "format")
    n = doc["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        fail("must be a non-negative integer", "vertices")

    def int_list(key, value, length=None):
        if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
            fail("must be a list of integers", key)
        if length is not None and len(value) != length:
            fail(f"entries must have length {length}", key)
        return value

    edges = doc["edges"]
    if not isinstance(edges, list):
        fail("must be a list of vertex pairs", "edges")
    for e in edges:
        int_list("edges", e, 2)
        if not all(0 <= x < n for x in e):
            fail(f"edge {e} references a vertex outside 0..{n - 1}", "edges")
    m = len(edges)
    rotation = doc["rotation"]
    if not isinstance(rotation, list) or len(rotation) != n:
        fail(f"must list one cyclic order per vertex ({n})", "rotation")
    for r in rotation:
        int_list("rotation", r, 3)
        if not all(0 <= x < m for x in r):
            fail(f"rotation {r} references an edge outside 0..{m - 1}", "rotation")
    painted = int_list("painted", doc["painted"])
    twisted = int_list("twisted", doc["twisted"])
    for key, ids in (("painted", painted), ("twisted", twisted)):
        if not all(0 <= x < m for x in ids):
            fail(f"edge id out of range 0..{m - 1}", key)
        if len(set(ids)) != len(ids):
            fail("duplicate edge ids", key)
    if not set(twisted) <= set(painted):
        fail("twisted not subset of painted", "twisted")
    return PaintedCrushtacean(
        n, tuple(map(tuple, edges)), tuple(map(tuple, rotation)), frozenset(painted), frozenset(twisted)
    )
