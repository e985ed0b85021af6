"""Hyperbolic volumes of fully augmented link complements from circle packings.

The standard polyhedron is the right-angled ideal polyhedron whose ideal
vertices are the tangency points of the packing.  Its faces are the circles
(each bounded by its tangency points) and the interstices (three tangency
points each).  Coning from one ideal vertex splits it into ideal tetrahedra.
The complement is two copies of the polyhedron, whatever the twists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.special import bernoulli

from .beltsum import canonical_decompose, refine_to_whitehead
from .core import Nerve, PaintedCrushtacean, nerve_of, require_valid
from .packing import DEFAULT_TOL, CirclePacking, pack

INF = None  # the point at infinity in ideal_tetra_volume

_SERIES_TERMS = 40


@lru_cache(maxsize=1)
def _series_coefficients() -> tuple[float, ...]:
    # log(sin t / t) = sum_n (-1)^n 2^(2n-1) B_2n t^2n / (n (2n)!), integrated term by term
    b = bernoulli(2 * _SERIES_TERMS)
    out = []
    for n in range(1, _SERIES_TERMS + 1):
        out.append(float((-1) ** n * 2 ** (2 * n - 1) * b[2 * n] / (n * math.factorial(2 * n) * (2 * n + 1))))
    return tuple(out)


def lobachevsky(theta: float) -> float:
    """Lobachevsky function ``-int_0^theta log|2 sin t| dt``."""
    # odd and pi-periodic: reduce to [-pi/2, pi/2]
    x = math.remainder(theta, math.pi)
    if x == 0.0:
        return 0.0
    sign = 1.0 if x > 0 else -1.0
    x = abs(x)
    total = x - x * math.log(2 * x)
    x2 = x * x
    power = x * x2
    for coef in _series_coefficients():
        term = coef * power
        total -= term
        if abs(term) < 1e-18:
            break
        power *= x2
    return sign * total


V8 = 8 * lobachevsky(math.pi / 4)


def _shape(z1, z2, z3, z4) -> complex:
    """Image of ``z4`` under the Moebius map sending z1, z2, z3 to infinity, 0, 1."""
    if z1 is INF:
        return (z4 - z2) / (z3 - z2)
    if z2 is INF:
        return (z3 - z1) / (z4 - z1)
    if z3 is INF:
        return (z4 - z2) / (z4 - z1)
    if z4 is INF:
        return (z3 - z1) / (z3 - z2)
    return (z4 - z2) * (z3 - z1) / ((z4 - z1) * (z3 - z2))


def ideal_tetra_volume(z1, z2, z3, z4) -> float:
    """Signed volume of the ideal tetrahedron with the given vertices on the sphere at infinity.

    Pass ``INF`` (``None``) for the point at infinity.  Positive for
    positively oriented tuples, zero when the points are concyclic.
    """
    pts = [z1, z2, z3, z4]
    finite = [complex(p) for p in pts if p is not INF]
    if len(finite) < 3:
        raise ValueError("at most one vertex may be at infinity")
    scale = max(abs(p) for p in finite) or 1.0
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if abs(finite[i] - finite[j]) <= 1e-14 * scale:
                raise ValueError("tetrahedron vertices coincide")
    z = _shape(*[p if p is INF else complex(p) for p in pts])
    if z.imag == 0.0:
        return 0.0
    a = math.atan2(z.imag, z.real)
    w = 1 / (1 - z)
    b = math.atan2(w.imag, w.real)
    c = math.copysign(math.pi, a) - a - b
    return lobachevsky(a) + lobachevsky(b) + lobachevsky(c)


@dataclass(frozen=True)
class IdealVertexSet:
    """Ideal vertices of the standard polyhedron and its two kinds of faces."""

    points: tuple[complex, ...]
    unshaded: tuple[tuple[int, ...], ...]
    shaded: tuple[tuple[int, int, int], ...]


def ideal_vertices(p: CirclePacking) -> IdealVertexSet:
    n = p.nerve
    points = tuple(p.tangency_point(a, b) for a, b in n.edges)
    unshaded = []
    for v in range(n.vertex_count):
        center = p.circles[v].center
        ks = [k for k, e in enumerate(n.edges) if v in e]
        ks.sort(key=lambda k: math.atan2((points[k] - center).imag, (points[k] - center).real))
        unshaded.append(tuple(ks))
    shaded = []
    for fi, (a, b, c) in enumerate(p.faces):
        ks = (n.edge_between(a, b), n.edge_between(b, c), n.edge_between(c, a))
        tri = [points[k] for k in ks]
        cross = (tri[1] - tri[0]).conjugate() * (tri[2] - tri[0])
        ccw = cross.imag > 0
        # bounded interstices run counterclockwise; the unbounded outer one runs clockwise
        if ccw != (fi != p.outer_face):
            ks = (ks[0], ks[2], ks[1])
        shaded.append(ks)
    return IdealVertexSet(points, tuple(unshaded), tuple(shaded))


def coning_contributions(p: CirclePacking, apex: int = 0) -> list[float]:
    """Signed volumes of the cone tetrahedra over every face from tangency point ``apex``."""
    iv = ideal_vertices(p)
    top = iv.points[apex]
    out = []
    for face in iv.unshaded + iv.shaded:
        for i in range(1, len(face) - 1):
            a, b, c = face[0], face[i], face[i + 1]
            if apex in (a, b, c):
                out.append(0.0)
                continue
            out.append(ideal_tetra_volume(top, iv.points[a], iv.points[b], iv.points[c]))
    return out


class VolumeError(ValueError):
    pass


def _double_cover_nerve(n: Nerve) -> Nerve:
    """Tetrahedral nerve obtained by inserting a circle into one interstice of three circles."""
    a, b, c = n.faces[0]
    edges = [(a, b), (b, c), (c, a), (a, 3), (b, 3), (c, 3)]
    faces = [(b, a, c), (a, b, 3), (b, c, 3), (c, a, 3)]
    return Nerve(4, tuple(edges), tuple(faces), frozenset({0, 5}))


def polyhedron_volume(p: CirclePacking, apex: int = 0) -> float:
    """Volume of the standard polyhedron of a packing.

    Three mutually tangent circles span no polyhedron; that nerve belongs to
    the Whitehead link, which is doubly covered by the Borromean rings, so
    half the tetrahedral volume is returned.
    """
    if p.residual > 10 * p.tolerance:
        raise VolumeError(f"packing residual {p.residual:.3e} above tolerance; refusing to compute volume")
    if p.nerve.vertex_count == 3:
        cover = pack(_double_cover_nerve(p.nerve), 0, p.tolerance)
        return polyhedron_volume(cover) / 2
    return abs(math.fsum(coning_contributions(p, apex)))


def nerve_volume(n: Nerve, outer_face: int = 0, tol: float = DEFAULT_TOL) -> float:
    return polyhedron_volume(pack(n.skeleton(), outer_face, tol))


@lru_cache(maxsize=4096)
def _cached_nerve_volume(n: Nerve, outer_face: int, tol: float) -> float:
    return nerve_volume(n, outer_face, tol)


def fal_volume(g: PaintedCrushtacean, outer_face: int = 0, tol: float = DEFAULT_TOL) -> float:
    """Volume of the complement: two copies of the standard polyhedron."""
    require_valid(g)
    n = nerve_of(g).skeleton()
    return 2 * _cached_nerve_volume(n, outer_face, tol)


def lower_bound(c: int) -> float:
    return 2 * (c - 1) * V8


@dataclass(frozen=True)
class VolumeReport:
    volume: float
    c: int
    lower_bound: float
    summand_volumes: tuple[float, ...]
    additivity_defect: float

    @property
    def bound_slack(self) -> float:
        return self.volume - self.lower_bound

    def to_dict(self) -> dict:
        return {
            "volume": self.volume,
            "c": self.c,
            "lower_bound": self.lower_bound,
            "summand_volumes": list(self.summand_volumes),
            "additivity_defect": self.additivity_defect,
            "bound_slack": self.bound_slack,
        }


def verify_decomposition_volume(
    g: PaintedCrushtacean, refine: bool = False, tol: float = DEFAULT_TOL, decomposition=None
) -> VolumeReport:
    """Compare the volume of ``g`` with the summed volumes of its canonical summands."""
    vol = fal_volume(g, tol=tol)
    d = decomposition if decomposition is not None else canonical_decompose(g)
    if refine:
        d = refine_to_whitehead(d)
    parts = tuple(fal_volume(s, tol=tol) for s in d.summands)
    defect = abs(vol - math.fsum(parts))
    return VolumeReport(vol, g.c, lower_bound(g.c), parts, defect)
