"""Enumeration of painted crushtaceans and the b-prime census table."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .beltsum import is_b_prime
from .core import (
    Nerve,
    PaintedCrushtacean,
    canonical_code,
    crushtacean_of,
    orient_faces,
    skeleton_code,
    to_dict,
    validate,
)
from .volume import fal_volume, verify_decomposition_volume

MAX_TRIANGULATION_VERTICES = 12
ORACLE_MAX_VERTICES = 6
CSV_COLUMNS = ("c", "n_triangulations", "n_fals", "n_bprime", "vol_min", "vol_max")
C2_NOTE = "b-prime iff fully twisted"


def _nerve_from_faces(nv: int, faces) -> Nerve:
    edges = sorted({tuple(sorted(p)) for f in faces for p in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2]))})
    return Nerve(nv, tuple(edges), tuple(tuple(f) for f in faces))


def _tetrahedron() -> Nerve:
    return _nerve_from_faces(4, [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def _cyclic_neighbors(faces, v) -> list[int]:
    nxt = {}
    for f in faces:
        if v in f:
            i = f.index(v)
            nxt[f[(i + 1) % 3]] = f[(i + 2) % 3]
    start = min(nxt)
    ring = [start]
    while nxt[ring[-1]] != start:
        ring.append(nxt[ring[-1]])
    return ring


def _vertex_splits(n: Nerve):
    """All triangulations one vertex larger obtained by splitting a vertex."""
    faces = orient_faces(n)
    new = n.vertex_count
    for v in range(n.vertex_count):
        ring = _cyclic_neighbors(faces, v)
        d = len(ring)
        kept = [f for f in faces if v not in f]
        for i in range(d):
            for span in range(1, d):
                j = (i + span) % d
                arc = [ring[(i + t) % d] for t in range(span + 1)]
                rest = [ring[(j + t) % d] for t in range(d - span + 1)]
                out = list(kept)
                out += [(new, arc[t], arc[t + 1]) for t in range(span)]
                out += [(v, rest[t], rest[t + 1]) for t in range(d - span)]
                out += [(v, new, ring[j]), (new, v, ring[i])]
                yield _nerve_from_faces(n.vertex_count + 1, out)


def _is_simple_triangulation(n: Nerve) -> bool:
    if n.check(painted=False):
        return False
    # the bare dual has no matching yet; every other invariant must hold
    report = validate(crushtacean_of(n, painted=False))
    return all(v.startswith("perfect matching") for v in report.violations)


def enumerate_triangulations(nv: int) -> list[Nerve]:
    """Simple sphere triangulations on ``nv`` vertices up to isomorphism and reflection.

    Grown from the tetrahedron by vertex splitting (every triangulation with
    at least five vertices has a contractible edge), deduplicated by the
    canonical code of the dual cubic map.
    """
    if not 4 <= nv <= MAX_TRIANGULATION_VERTICES:
        raise ValueError(f"nv must lie in 4..{MAX_TRIANGULATION_VERTICES}")
    level = {skeleton_code(crushtacean_of(_tetrahedron(), painted=False)): _tetrahedron()}
    for _ in range(nv - 4):
        nxt: dict[str, Nerve] = {}
        for n in level.values():
            for m in _vertex_splits(n):
                if not _is_simple_triangulation(m):
                    continue
                code = skeleton_code(crushtacean_of(m, painted=False))
                nxt.setdefault(code, m)
        level = nxt
    return [level[k] for k in sorted(level)]


def perfect_matchings(g: PaintedCrushtacean) -> list[frozenset[int]]:
    out: list[frozenset[int]] = []

    def extend(covered: frozenset[int], chosen: list[int]):
        free = [v for v in range(g.vertex_count) if v not in covered]
        if not free:
            out.append(frozenset(chosen))
            return
        v = free[0]
        for e in g.rotation[v]:
            w = g.other_end(e, v)
            if w not in covered:
                extend(covered | {v, w}, chosen + [e])

    extend(frozenset(), [])
    return sorted(out, key=sorted)


def enumerate_painted_crushtaceans(c: int) -> list[PaintedCrushtacean]:
    """All-flat painted crushtaceans with ``c`` crossing circles, one per isomorphism class."""
    if c < 2:
        raise ValueError("c must be at least 2")
    found: dict[str, PaintedCrushtacean] = {}
    for n in enumerate_triangulations(c + 2):
        skel = crushtacean_of(n, painted=False)
        for m in perfect_matchings(skel):
            g = PaintedCrushtacean(skel.vertex_count, skel.edges, skel.rotation, m)
            found.setdefault(canonical_code(g), g)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# independent brute-force oracle


def _rotation_faces(rot: dict[int, tuple[int, ...]]) -> int:
    succ = {}
    for v, nbrs in rot.items():
        for i, u in enumerate(nbrs):
            succ[(v, u)] = nbrs[(i + 1) % len(nbrs)]
    seen = set()
    faces = 0
    for dart in succ:
        if dart in seen:
            continue
        faces += 1
        d = dart
        while d not in seen:
            seen.add(d)
            u, v = d
            d = (v, succ[(v, u)])
    return faces


def _normal_rotation(rot: dict[int, tuple[int, ...]]) -> tuple:
    out = []
    for v in sorted(rot):
        nb = rot[v]
        i = nb.index(min(nb))
        out.append(tuple(nb[i:] + nb[:i]))
    return tuple(out)


def _map_key(rot: dict[int, tuple[int, ...]]) -> tuple:
    """Least relabelled rotation over all vertex permutations and both orientations."""
    verts = sorted(rot)
    best = None
    for perm in itertools.permutations(verts):
        pi = dict(zip(verts, perm))
        for flip in (False, True):
            img = {}
            for v, nb in rot.items():
                seq = tuple(pi[u] for u in nb)
                img[pi[v]] = tuple(reversed(seq)) if flip else seq
            key = _normal_rotation(img)
            if best is None or key < best:
                best = key
    return best


def rotation_oracle(nv: int) -> list[dict[int, tuple[int, ...]]]:
    """Exhaustive search: maximal planar rotation systems on ``nv`` labelled vertices, up to isomorphism."""
    if nv > ORACLE_MAX_VERTICES:
        raise ValueError(f"the brute-force oracle only runs for nv <= {ORACLE_MAX_VERTICES}")
    pairs = list(itertools.combinations(range(nv), 2))
    target_edges = 3 * nv - 6
    graphs: list[nx.Graph] = []
    for chosen in itertools.combinations(pairs, target_edges):
        G = nx.Graph(chosen)
        if G.number_of_nodes() != nv or min(d for _, d in G.degree) < 3:
            continue
        if not any(nx.is_isomorphic(G, H) for H in graphs):
            graphs.append(G)
    maps: dict[tuple, dict] = {}
    for G in graphs:
        options = []
        for v in range(nv):
            nb = sorted(G[v])
            options.append([(nb[0],) + rest for rest in itertools.permutations(nb[1:])])
        for choice in itertools.product(*options):
            rot = dict(enumerate(choice))
            if nv - target_edges + _rotation_faces(rot) == 2:
                maps.setdefault(_map_key(rot), rot)
    return [maps[k] for k in sorted(maps)]


def matching_orbits_bruteforce(g: PaintedCrushtacean) -> int:
    """Perfect matchings of a simple cubic graph counted up to graph automorphism."""
    matchings = {frozenset(frozenset(g.edges[e]) for e in m) for m in perfect_matchings(g)}
    verts = range(g.vertex_count)
    edge_set = {frozenset(e) for e in g.edges}
    autos = []
    for perm in itertools.permutations(verts):
        if all(frozenset((perm[a], perm[b])) in edge_set for a, b in g.edges):
            autos.append(perm)
    orbits = set()
    for m in matchings:
        orbit = frozenset(frozenset(frozenset(p[x] for x in e) for e in m) for p in autos)
        orbits.add(orbit)
    return len(orbits)


# ---------------------------------------------------------------------------
# census table


def twist_classes(g: PaintedCrushtacean) -> list[PaintedCrushtacean]:
    """Twist assignments of ``g`` up to painted-map automorphism."""
    seen: dict[str, PaintedCrushtacean] = {}
    painted = sorted(g.painted)
    for r in range(len(painted) + 1):
        for tw in itertools.combinations(painted, r):
            h = g.with_twists(tw)
            seen.setdefault(canonical_code(h, include_twists=True), h)
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class CensusRow:
    c: int
    n_triangulations: int
    n_fals: int
    n_bprime: int
    vol_min: float
    vol_max: float
    note: str = ""

    def csv_fields(self) -> list[str]:
        return [
            str(self.c),
            str(self.n_triangulations),
            str(self.n_fals),
            str(self.n_bprime),
            f"{self.vol_min:.9f}",
            f"{self.vol_max:.9f}",
        ]

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "n_triangulations": self.n_triangulations,
            "n_fals": self.n_fals,
            "n_bprime": self.n_bprime,
            "vol_min": self.vol_min,
            "vol_max": self.vol_max,
            "note": self.note,
        }


def census_row(c: int, twist_sensitive: bool = False, instances=None) -> CensusRow:
    fals = instances if instances is not None else enumerate_painted_crushtaceans(c)
    vols = [fal_volume(g) for g in fals]
    note = ""
    if twist_sensitive:
        classes = [h for g in fals for h in twist_classes(g)]
        n_fals = len(classes)
        n_bprime = sum(is_b_prime(h) for h in classes)
    else:
        n_fals = len(fals)
        if c == 2:
            # the lone class is b-prime only in its fully twisted member
            n_bprime = sum(is_b_prime(g.with_twists(g.painted)) for g in fals)
            note = C2_NOTE
        else:
            n_bprime = sum(is_b_prime(g) for g in fals)
    return CensusRow(c, len(enumerate_triangulations(c + 2)), n_fals, n_bprime, min(vols), max(vols), note)


def tabulate_census(c_max: int = 6, twist_sensitive: bool = False) -> list[CensusRow]:
    if not 2 <= c_max <= MAX_TRIANGULATION_VERTICES - 2:
        raise ValueError(f"c_max must lie in 2..{MAX_TRIANGULATION_VERTICES - 2}")
    return [census_row(c, twist_sensitive) for c in range(2, c_max + 1)]


def census_csv(rows: list[CensusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


def write_sidecars(c_max: int, out_dir: Path) -> list[Path]:
    """One JSON document per census instance: its crushtacean and volume report."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for c in range(2, c_max + 1):
        for i, g in enumerate(enumerate_painted_crushtaceans(c)):
            doc = {
                "crushtacean": to_dict(g),
                "canonical_code": canonical_code(g),
                "b_prime": is_b_prime(g),
                "volume_report": verify_decomposition_volume(g).to_dict(),
            }
            path = out_dir / f"c{c}_{i:03d}.json"
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            written.append(path)
    return written
