"""Combinatorial classification of non-reflection thrice-punctured spheres.

Every such sphere in a fully augmented link complement (other than the
fully twisted Borromean rings) is a crossing disk, a longitudinal disk or a
singly separated disk (s-disk).  All three are detected on the crushtacean
or its nerve:

* crossing disks: trivial cuts at a painted edge (the standard disk) and
  non-trivial cuts with exactly one painted edge;
* longitudinal disks: non-trivial cuts with all three edges painted;
* s-disks: a painted nerve edge with a flat crossing circle whose two
  adjacent faces close up across a second painted nerve edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, Union

from .core import PaintedCrushtacean, nerve_of, require_valid
from .cuts import ThreeEdgeCut, all_three_edge_cuts

KNOT = "knot"


class SlopeKind(str, Enum):
    MERIDIAN_KNOT = "meridian-knot"
    MERIDIAN_CROSSING = "meridian-crossing"
    LONGITUDE_CROSSING = "longitude-crossing"


class DiskKind(str, Enum):
    STANDARD_CROSSING = "StandardCrossing"
    NONSTANDARD_CROSSING = "NonStandardCrossing"
    LONGITUDINAL = "Longitudinal"
    SINGLY_SEPARATED = "SinglySeparated"


CROSSING_KINDS = (DiskKind.STANDARD_CROSSING, DiskKind.NONSTANDARD_CROSSING)


@dataclass(frozen=True)
class PunctureSlope:
    kind: SlopeKind
    component: Union[int, str]

    def __post_init__(self):
        if self.kind is not SlopeKind.MERIDIAN_KNOT and not isinstance(self.component, int):
            raise ValueError(f"{self.kind.value} puncture must name a painted edge")

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "component": self.component}


@dataclass(frozen=True)
class SDiskPattern:
    """Nerve K4 pattern: painted edges (C1, C2) and (C3, C4), faces C1C2C3 and C1C2C4."""

    circles: tuple[int, int, int, int]
    meridian_edge: int
    longitude_edge: int

    def to_dict(self) -> dict:
        return {
            "nerve_circles": list(self.circles),
            "meridian_edge": self.meridian_edge,
            "longitude_edge": self.longitude_edge,
        }


@dataclass(frozen=True)
class Disk:
    kind: DiskKind
    longitudinal_circle: int
    witness: Union[ThreeEdgeCut, SDiskPattern]
    punctures: tuple[PunctureSlope, PunctureSlope, PunctureSlope]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "longitudinal_circle": self.longitudinal_circle,
            "witness": self.witness.to_dict(),
            "punctures": [p.to_dict() for p in self.punctures],
        }


@dataclass(frozen=True)
class DiskCensus:
    disks: tuple[Disk, ...]
    notes: tuple[str, ...] = ()

    def __iter__(self) -> Iterator[Disk]:
        return iter(self.disks)

    def __len__(self) -> int:
        return len(self.disks)

    def __getitem__(self, i):
        return self.disks[i]

    def count(self, kind: DiskKind) -> int:
        return sum(d.kind is kind for d in self.disks)

    def to_dict(self) -> dict:
        return {"disks": [d.to_dict() for d in self.disks], "notes": list(self.notes)}


def _crossing_disk(kind: DiskKind, e: int, witness: ThreeEdgeCut) -> Disk:
    punctures = (
        PunctureSlope(SlopeKind.LONGITUDE_CROSSING, e),
        PunctureSlope(SlopeKind.MERIDIAN_KNOT, KNOT),
        PunctureSlope(SlopeKind.MERIDIAN_KNOT, KNOT),
    )
    return Disk(kind, e, witness, punctures)


def crossing_disks(g: PaintedCrushtacean, cuts: list[ThreeEdgeCut] | None = None) -> dict[int, list[Disk]]:
    """Crossing disks bounded by each crossing circle, keyed by painted edge."""
    require_valid(g)
    if cuts is None:
        cuts = all_three_edge_cuts(g)
    stars = {}
    for k in cuts:
        if k.trivial:
            lone = k.side_a if len(k.side_a) == 1 else k.side_b
            stars[next(iter(lone))] = k
    out: dict[int, list[Disk]] = {}
    for e in sorted(g.painted):
        # both endpoint stars are the same disk; keep the lower endpoint's
        a, b = g.edges[e]
        out[e] = [_crossing_disk(DiskKind.STANDARD_CROSSING, e, stars[min(a, b)])]
    for k in cuts:
        if not k.trivial and k.painted_count == 1:
            (e,) = k.painted_edges(g)
            out[e].append(_crossing_disk(DiskKind.NONSTANDARD_CROSSING, e, k))
    return out


def longitudinal_disks(g: PaintedCrushtacean, cuts: list[ThreeEdgeCut] | None = None) -> list[Disk]:
    require_valid(g)
    if cuts is None:
        cuts = all_three_edge_cuts(g)
    out = []
    for k in cuts:
        if not k.trivial and k.painted_count == 3:
            punctures = tuple(PunctureSlope(SlopeKind.LONGITUDE_CROSSING, e) for e in k.edges)
            out.append(Disk(DiskKind.LONGITUDINAL, min(k.edges), k, punctures))
    return out


def s_disks(g: PaintedCrushtacean) -> list[Disk]:
    """Singly separated disks, one per qualifying painted nerve edge."""
    n = nerve_of(g)
    out = []
    for k in sorted(n.painted, key=lambda k: n.dual_edge[k]):
        e_mer = n.dual_edge[k]
        if e_mer in g.twisted:
            continue
        c1, c2 = n.edges[k]
        thirds = []
        for fi in n.edge_faces[k]:
            (x,) = set(n.faces[fi]) - {c1, c2}
            thirds.append(x)
        c3, c4 = thirds
        if c3 == c4:
            continue
        opp = n.edge_between(c3, c4)
        if opp is None or opp not in n.painted:
            continue
        e_lon = n.dual_edge[opp]
        punctures = (
            PunctureSlope(SlopeKind.LONGITUDE_CROSSING, e_lon),
            PunctureSlope(SlopeKind.MERIDIAN_CROSSING, e_mer),
            PunctureSlope(SlopeKind.MERIDIAN_CROSSING, e_mer),
        )
        out.append(Disk(DiskKind.SINGLY_SEPARATED, e_lon, SDiskPattern((c1, c2, c3, c4), e_mer, e_lon), punctures))
    return out


def is_fully_twisted_borromean(g: PaintedCrushtacean) -> bool:
    return g.vertex_count == 4 and g.twisted == g.painted


def disk_census(g: PaintedCrushtacean) -> DiskCensus:
    cuts = all_three_edge_cuts(g)
    disks: list[Disk] = []
    for ds in crossing_disks(g, cuts).values():
        disks.extend(ds)
    disks.extend(longitudinal_disks(g, cuts))
    disks.extend(s_disks(g))
    notes = ()
    if is_fully_twisted_borromean(g):
        notes = (
            "fully twisted Borromean rings: the classification does not cover this manifold; "
            "it also carries a non-reflection thrice-punctured sphere made of a single geodesic disk, "
            "which never belongs to a separating pair",
        )
    return DiskCensus(tuple(disks), notes)


def separating_pairs(g: PaintedCrushtacean, census: DiskCensus | None = None) -> list[tuple[Disk, Disk]]:
    """Pairs of crossing or s-disks sharing their longitudinal circle."""
    if census is None:
        census = disk_census(g)
    usable = [d for d in census if d.kind is not DiskKind.LONGITUDINAL]
    return [(s, t) for s, t in combinations(usable, 2) if s.longitudinal_circle == t.longitudinal_circle]
