"""Static SVG pictures of crushtaceans, nerves and circle packings.

Maps are drawn with a Tutte barycentric embedding: the vertices of the
longest face are pinned to a regular polygon and every other vertex sits at
the average of its neighbours.  Output depends only on the input.
"""

from __future__ import annotations

import math
from collections import Counter
from xml.sax.saxutils import escape

import numpy as np

from .core import Nerve, PaintedCrushtacean, orient_faces, require_valid
from .packing import CirclePacking

SIZE = 480
MARGIN = 24

_STYLE = (
    ".edge{stroke:#555;stroke-width:2;fill:none}"
    ".painted{stroke:#c0392b;stroke-width:4}"
    ".twisted{stroke-dasharray:8 5}"
    ".vertex{fill:#222}"
    ".circle{fill:#dfe8f5;fill-opacity:0.6;stroke:#2c3e50;stroke-width:1}"
    ".tangency{fill:#c0392b}"
    "text{font:11px sans-serif;fill:#333}"
)


def _tutte(n_vertices: int, edges, boundary: list[int]) -> dict[int, complex]:
    pos = {
        v: complex(math.cos(2 * math.pi * i / len(boundary)), math.sin(2 * math.pi * i / len(boundary)))
        for i, v in enumerate(boundary)
    }
    if len(boundary) == 2:
        pos = {boundary[0]: complex(-1, 0), boundary[1]: complex(1, 0)}
    inner = [v for v in range(n_vertices) if v not in pos]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        lap = np.zeros((len(inner), len(inner)))
        rhs = np.zeros(len(inner), dtype=complex)
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x in idx:
                    lap[idx[x], idx[x]] += 1
                    if y in idx:
                        lap[idx[x], idx[y]] -= 1
                    else:
                        rhs[idx[x]] += pos[y]
        sol = np.linalg.solve(lap, rhs.real) + 1j * np.linalg.solve(lap, rhs.imag)
        for v in inner:
            pos[v] = complex(sol[idx[v]])
    return pos


def _to_screen(z: complex, lo: complex, scale: float) -> tuple[float, float]:
    w = (z - lo) * scale
    # svg y grows downward
    return round(MARGIN + w.real, 3), round(SIZE - MARGIN - w.imag, 3)


def _frame(points) -> tuple[complex, float]:
    xs = [p.real for p in points]
    ys = [p.imag for p in points]
    lo = complex(min(xs), min(ys))
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    return lo, (SIZE - 2 * MARGIN) / span


def _document(body: list[str], title: str) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title)}</title>",
        f"<style>{_STYLE}</style>",
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _draw_map(n_vertices, edges, boundary, edge_classes, title) -> str:
    pos = _tutte(n_vertices, edges, boundary)
    lo, scale = _frame(list(pos.values()))
    body: list[str] = []
    seen: Counter = Counter()
    mult = Counter(frozenset(e) for e in edges)
    for k, (a, b) in enumerate(edges):
        cls = " ".join(["edge"] + edge_classes[k])
        (x1, y1), (x2, y2) = _to_screen(pos[a], lo, scale), _to_screen(pos[b], lo, scale)
        key = frozenset((a, b))
        if mult[key] == 1:
            body.append(f'<line class="{cls}" data-edge="{k}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
            continue
        # parallel edges fan out as quadratic curves
        offset = seen[key] - (mult[key] - 1) / 2
        seen[key] += 1
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        length = math.hypot(dx, dy) or 1.0
        bend = 0.6 * length * offset
        cx, cy = round(mx - dy / length * bend, 3), round(my + dx / length * bend, 3)
        body.append(f'<path class="{cls}" data-edge="{k}" d="M {x1} {y1} Q {cx} {cy} {x2} {y2}"/>')
    for v in range(n_vertices):
        x, y = _to_screen(pos[v], lo, scale)
        body.append(f'<circle class="vertex" data-vertex="{v}" cx="{x}" cy="{y}" r="5"/>')
        body.append(f'<text x="{x + 7}" y="{y - 7}">{v}</text>')
    return _document(body, title)


def render_crushtacean(g: PaintedCrushtacean, title: str = "painted crushtacean") -> str:
    require_valid(g)
    face = max(g.face_darts, key=lambda f: (len(f), -min(f)))
    boundary: list[int] = []
    for d in face:
        v = g.dart_vertex(d)
        if v not in boundary:
            boundary.append(v)
    classes = []
    for e in range(g.edge_count):
        c = []
        if e in g.painted:
            c.append("painted")
        if e in g.twisted:
            c.append("twisted")
        classes.append(c)
    return _draw_map(g.vertex_count, g.edges, boundary, classes, title)


def render_nerve(n: Nerve, title: str = "nerve") -> str:
    outer = list(orient_faces(n)[0])
    classes = [["painted"] if k in n.painted else [] for k in range(len(n.edges))]
    return _draw_map(n.vertex_count, n.edges, outer, classes, title)


def render_packing(p: CirclePacking, title: str = "circle packing") -> str:
    extent = [c.center + r for c in p.circles for r in (c.radius, -c.radius, 1j * c.radius, -1j * c.radius)]
    lo, scale = _frame(extent)
    body: list[str] = []
    for v, c in enumerate(p.circles):
        x, y = _to_screen(c.center, lo, scale)
        body.append(f'<circle class="circle" data-vertex="{v}" cx="{x}" cy="{y}" r="{round(c.radius * scale, 3)}"/>')
    for a, b in p.nerve.edges:
        x, y = _to_screen(p.tangency_point(a, b), lo, scale)
        body.append(f'<circle class="tangency" data-edge="{a}-{b}" cx="{x}" cy="{y}" r="2.5"/>')
    return _document(body, title)


def render_svg(obj, title: str | None = None) -> str:
    """Dispatch on a crushtacean, nerve or packing."""
    if isinstance(obj, PaintedCrushtacean):
        return render_crushtacean(obj, title or "painted crushtacean")
    if isinstance(obj, Nerve):
        return render_nerve(obj, title or "nerve")
    if isinstance(obj, CirclePacking):
        return render_packing(obj, title or "circle packing")
    raise TypeError(f"cannot render {type(obj).__name__}")
