"""Tangency circle packings of nerves.

The packing is normalised so that the three circles of ``outer_face`` have
unit radius and are mutually tangent, with every other circle inside their
bounded interstice.  Radii come from per-vertex relaxation of the interior
angle sums; centres are laid out face by face.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import Nerve, orient_faces

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 1_000_000


class PackingError(RuntimeError):
    def __init__(self, message: str, history: list[float] | None = None):
        super().__init__(message)
        self.history = history or []


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")


@dataclass(frozen=True)
class CirclePacking:
    nerve: Nerve
    outer_face: int
    circles: tuple[Circle, ...]
    residual: float
    tolerance: float
    faces: tuple[tuple[int, int, int], ...] = field(default=(), repr=False)

    def tangency_point(self, i: int, j: int) -> complex:
        ci, cj = self.circles[i], self.circles[j]
        return ci.center + ci.radius * (cj.center - ci.center) / (ci.radius + cj.radius)

    def scaled(self, factor: float) -> "CirclePacking":
        circles = tuple(Circle(c.center * factor, c.radius * factor) for c in self.circles)
        return CirclePacking(self.nerve, self.outer_face, circles, self.residual * factor, self.tolerance, self.faces)

    def to_dict(self) -> dict:
        return {
            "outer_face": self.outer_face,
            "circles": [
                {"v": v, "x": c.center.real, "y": c.center.imag, "r": c.radius} for v, c in enumerate(self.circles)
            ],
            "residual": self.residual,
        }


def face_angle(rv: float, ru: float, rw: float) -> float:
    """Angle at the centre of circle ``v`` in the triangle of centres v, u, w."""
    # half-angle form of the law of cosines; no cancellation for tiny radii
    return 2.0 * math.asin(math.sqrt(ru * rw / ((rv + ru) * (rv + rw))))


def _incident_faces(n: Nerve, faces) -> list[list[tuple[int, int]]]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n.vertex_count)]
    for a, b, c in faces:
        inc[a].append((b, c))
        inc[b].append((c, a))
        inc[c].append((a, b))
    return inc


def angle_sums(n: Nerve, radii) -> np.ndarray:
    inc = _incident_faces(n, n.faces)
    return np.array([sum(face_angle(radii[v], radii[u], radii[w]) for u, w in inc[v]) for v in range(n.vertex_count)])


def solve_radii(n: Nerve, outer_face: int = 0, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS) -> np.ndarray:
    """Radii with unit boundary and interior angle sums equal to ``2*pi``.

    Uses the uniform-neighbour update: a vertex whose ``k`` petals subtend
    angle ``theta`` is replaced by the radius that ``k`` equal petals of the
    matching size would need to close up exactly.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    boundary = set(n.faces[outer_face])
    interior = [v for v in range(n.vertex_count) if v not in boundary]
    radii = [1.0] * n.vertex_count
    if not interior:
        return np.array(radii)
    inc = _incident_faces(n, n.faces)
    petals = {v: [(u, w) for u, w in inc[v]] for v in interior}
    history: list[float] = []
    two_pi = 2.0 * math.pi
    for it in range(max_iter):
        worst = 0.0
        for v in interior:
            r = radii[v]
            theta = sum(face_angle(r, radii[u], radii[w]) for u, w in petals[v])
            worst = max(worst, abs(theta - two_pi))
            k = len(petals[v])
            beta = math.sin(theta / (2 * k))
            delta = math.sin(math.pi / k)
            uniform = beta * r / (1 - beta)
            radii[v] = uniform * (1 - delta) / delta
        if it % 64 == 0:
            history.append(worst)
        if worst < tol:
            break
    else:
        raise PackingError(f"radius relaxation did not reach tolerance {tol} in {max_iter} sweeps", history)
    sums = angle_sums(n, radii)
    defect = max(abs(sums[v] - two_pi) for v in interior)
    if defect >= tol:
        raise PackingError(f"final angle defect {defect:.3e} above tolerance {tol}", history)
    return np.array(radii)


def _third_center(pu: complex, ru: float, pv: complex, rv: float, rw: float, side: int) -> complex:
    """Centre of a circle tangent to u and v; ``side=+1`` puts it left of u->v."""
    duv = ru + rv
    duw = ru + rw
    dvw = rv + rw
    cos_a = (duv * duv + duw * duw - dvw * dvw) / (2 * duv * duw)
    ang = math.acos(max(-1.0, min(1.0, cos_a)))
    direction = (pv - pu) / abs(pv - pu)
    return pu + duw * direction * complex(math.cos(ang), side * math.sin(ang))


def layout_packing(n: Nerve, radii, outer_face: int = 0, tol: float = DEFAULT_TOL) -> CirclePacking:
    """Place centres; the outer face is counterclockwise with its first two centres on the x-axis."""
    faces = orient_faces(n)
    a, b, c = faces[outer_face]
    pos: dict[int, complex] = {}
    ra, rb, rc = radii[a], radii[b], radii[c]
    pos[a] = complex(-(ra + rb) / 2, 0.0)
    pos[b] = complex((ra + rb) / 2, 0.0)
    pos[c] = _third_center(pos[a], ra, pos[b], rb, rc, +1)
    # coherent orientation: the outer face runs counterclockwise, so interior faces run clockwise
    todo = deque(i for i in range(len(faces)) if i != outer_face)
    stalled = 0
    while todo and stalled <= len(todo):
        fi = todo.popleft()
        f = faces[fi]
        unknown = [x for x in f if x not in pos]
        if len(unknown) != 1:
            if unknown:
                todo.append(fi)
                stalled += 1
            continue
        stalled = 0
        i = f.index(unknown[0])
        u, v, w = f[(i + 1) % 3], f[(i + 2) % 3], f[i]
        pos[w] = _third_center(pos[u], radii[u], pos[v], radii[v], radii[w], -1)
    if len(pos) != n.vertex_count:
        raise PackingError("layout could not reach every circle")
    circles = tuple(Circle(complex(pos[v]), float(radii[v])) for v in range(n.vertex_count))
    residual = tangency_residual(n, circles)
    packing = CirclePacking(n, outer_face, circles, residual, tol, faces)
    if residual > 10 * tol:
        raise PackingError(f"tangency residual {residual:.3e} exceeds {10 * tol:.1e}")
    return packing


def tangency_residual(n: Nerve, circles) -> float:
    """Worst tangency defect over edges plus overlap over non-edges."""
    worst = 0.0
    for a, b in n.edges:
        d = abs(circles[a].center - circles[b].center)
        worst = max(worst, abs(d - circles[a].radius - circles[b].radius))
    for i in range(n.vertex_count):
        for j in range(i + 1, n.vertex_count):
            if j not in n.adjacency[i]:
                d = abs(circles[i].center - circles[j].center)
                worst = max(worst, circles[i].radius + circles[j].radius - d)
    return worst


def pack(n: Nerve, outer_face: int = 0, tol: float = DEFAULT_TOL) -> CirclePacking:
    return layout_packing(n, solve_radii(n, outer_face, tol), outer_face, tol)


def circle_through(p: complex, q: complex, r: complex) -> Circle:
    """Circumcircle of three points."""
    ax, ay, bx, by, cx, cy = p.real, p.imag, q.real, q.imag, r.real, r.imag
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(abs(p - q), abs(q - r), abs(r - p)) ** 2
    if abs(d) <= 1e-14 * scale:
        raise ValueError("tangency points are collinear")
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy)
    return Circle(center, abs(center - p))


def orthocircle_check(p: CirclePacking, triple) -> float:
    """Orthogonality defect between the circle through a triple's tangency points and the triple."""
    i, j, k = triple
    adj = p.nerve.adjacency
    if not (j in adj[i] and k in adj[i] and k in adj[j]):
        raise ValueError(f"{triple} is not a 3-clique of the nerve")
    star = circle_through(p.tangency_point(i, j), p.tangency_point(j, k), p.tangency_point(k, i))
    return max(
        abs(abs(star.center - p.circles[x].center) ** 2 - star.radius**2 - p.circles[x].radius ** 2) for x in triple
    )
