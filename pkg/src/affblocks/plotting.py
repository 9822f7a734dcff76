"""SVG pictures of rank-2 hyperplane arrangements.

Coweights are drawn in a Euclidean embedding obtained from the Cholesky
factor of the invariant form, so reflections look like reflections.  Output is
byte-stable: no timestamps, fixed hash salt, fixed rendering order.

Styling follows the usual alcove pictures: chain alcoves in gray, facets of a
given type in red, dominant-cone walls thick, the rho-shifted cone dashed,
and walls through a chosen special point thick blue.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .affine_weyl import affine_weyl_group, facet_of
from .affine_weyl.group import AffineWeylGroup
from .root_data import build_root_system

CHAIN_COLOR = "#b0b0b0"
FACET_COLOR = "#d62728"
POINT_COLOR = "#1f4e9c"
LINE_COLOR = "#9a9a9a"
PASS_COLOR = "#8fd18f"
FAIL_COLOR = "#e8877f"
HASH_SALT = "affblocks"


class PlotError(ValueError):
    pass


def embedding(rs) -> np.ndarray:
    """Matrix ``E`` with ``|E p|^2`` equal to the invariant form of ``p``."""
    G = np.array(build_root_system(rs).gram, dtype=float)
    return np.linalg.cholesky(G).T


def alcove_vertices(W: AffineWeylGroup, alcove, scale: int = 1) -> list[tuple[Fraction, ...]]:
    """Vertices of a rank-2 alcove (in coweight coordinates), counter-clockwise in the embedding."""
    bounds = []
    for a, n in enumerate(alcove):
        bounds.append((W.roots[a], n - 1))
        bounds.append((W.roots[a], n))
    pts = set()
    for (r1, k1), (r2, k2) in combinations(bounds, 2):
        det = r1[0] * r2[1] - r1[1] * r2[0]
        if det == 0:
            continue
        x = Fraction(k1 * r2[1] - k2 * r1[1], det)
        y = Fraction(r1[0] * k2 - r2[0] * k1, det)
        if all(n - 1 <= r[0] * x + r[1] * y <= n for r, n in zip(W.roots, alcove)):
            pts.add((x, y))
    pts = sorted(pts)
    E = embedding(W.rs)
    emb = [E @ np.array([float(p[0]), float(p[1])]) for p in pts]
    cx, cy = np.mean(emb, axis=0)
    order = sorted(range(len(pts)), key=lambda i: float(np.arctan2(emb[i][1] - cy, emb[i][0] - cx)))
    return [tuple(scale * c for c in pts[i]) for i in order]


def _xy(E, p):
    q = E @ np.array([float(c) for c in p])
    return float(q[0]), float(q[1])


class ArrangementPlot:
    def __init__(self, rs, ell: int = 1, extent: int = 6):
        rs = build_root_system(rs)
        if rs.rank != 2:
            raise PlotError("plots are only available for rank 2")
        self.rs = rs
        self.W = affine_weyl_group(rs)
        self.ell = ell
        self.E = embedding(rs)
        self.fig = Figure(figsize=(6, 6))
        self.ax = self.fig.add_subplot(1, 1, 1)
        self.ax.set_aspect("equal")
        self.ax.set_axis_off()
        corners = [(-1, -1), (-1, extent), (extent, -1), (extent, extent)]
        xs, ys = zip(*(_xy(self.E, c) for c in corners))
        self.ax.set_xlim(min(xs), max(xs))
        self.ax.set_ylim(min(ys), max(ys))
        self._corners = corners
        self._z = 1

    def _line(self, root, k, **style):
        # points p with <p, root> = k, two of them, in coweight coordinates
        a, b = root
        if b != 0:
            p1, p2 = (0, Fraction(k, b)), (1, Fraction(k - a, b))
        else:
            p1, p2 = (Fraction(k, a), 0), (Fraction(k, a), 1)
        self.ax.axline(_xy(self.E, p1), _xy(self.E, p2), zorder=self._next(), **style)

    def _next(self) -> int:
        self._z += 1
        return self._z

    def arrangement(self):
        for root in self.W.roots:
            vals = [root[0] * c[0] + root[1] * c[1] for c in self._corners]
            lo, hi = min(vals) // self.ell, -(-max(vals) // self.ell)
            for k in range(lo, hi + 1):
                self._line(root, k * self.ell, color=LINE_COLOR, linewidth=0.5)
        return self

    def shade_alcove(self, alcove, color=CHAIN_COLOR, label=None):
        pts = [_xy(self.E, p) for p in alcove_vertices(self.W, alcove, self.ell)]
        self.ax.fill([p[0] for p in pts], [p[1] for p in pts], color=color, linewidth=0, zorder=self._next())
        if label is not None:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            self.ax.text(cx, cy, label, ha="center", va="center", fontsize=7, zorder=self._next())
        return self

    def facet(self, alcove, facet):
        """Draw the face of ``alcove`` carrying the unit-scale ``facet``."""
        verts = [p for p in alcove_vertices(self.W, alcove, 1)
                 if all(self.W.roots[a][0] * p[0] + self.W.roots[a][1] * p[1] == k
                        for a, k in facet.equalities.items())]
        pts = [_xy(self.E, [self.ell * c for c in p]) for p in verts]
        if len(pts) == 1:
            self.ax.plot([pts[0][0]], [pts[0][1]], "o", color=FACET_COLOR, markersize=4, zorder=self._next())
        elif len(pts) == 2:
            self.ax.plot([p[0] for p in pts], [p[1] for p in pts], color=FACET_COLOR, linewidth=2.5,
                         zorder=self._next())
        return self

    def dominant_cone(self, shift=0, dashed=False):
        origin = (shift, shift)
        style = {"color": "black", "linewidth": 1.0 if dashed else 2.0, "linestyle": "--" if dashed else "-"}
        far = 1000
        for direction in ((1, 0), (0, 1)):
            end = (shift + far * direction[0], shift + far * direction[1])
            (x0, y0), (x1, y1) = _xy(self.E, origin), _xy(self.E, end)
            self.ax.plot([x0, x1], [y0, y1], zorder=self._next(), **style)
        return self

    def special_point(self, v):
        for root in self.W.roots:
            self._line(root, root[0] * v[0] + root[1] * v[1], color=POINT_COLOR, linewidth=2.0)
        x, y = _xy(self.E, v)
        self.ax.plot([x], [y], "o", color=POINT_COLOR, markersize=5, zorder=self._next())
        return self

    def title(self, text):
        self.ax.set_title(text, fontsize=9)
        return self

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "path"}):
            self.fig.savefig(path, format="svg", metadata={"Date": None})
        return path


def plot_arrangement(rs, out, ell: int = 1, extent: int = 6, chain=None, facets: bool = True,
                     point=None, cones: bool = True, title: str | None = None) -> Path:
    """Arrangement at level ``ell``.  ``chain`` is a list of dominant weights:
    the alcoves whose upper closure holds ``lam + rho`` are shaded and numbered,
    and with ``facets`` the facet through ``lam + rho`` is drawn in red."""
    p = ArrangementPlot(rs, ell, extent).arrangement()
    W = p.W
    for i, lam in enumerate(chain or ()):
        A = chain_alcove(W, lam, ell)
        p.shade_alcove(A, label=str(i))
        if facets:
            p.facet(A, _facet_of_weight(W, lam, ell))
    if cones:
        p.dominant_cone()
        p.dominant_cone(shift=ell, dashed=True)
    if point is not None:
        p.special_point(point)
    if title:
        p.title(title)
    return p.save(out)


def chain_alcove(W: AffineWeylGroup, lam, ell: int):
    """Unit-scale alcove ``A`` with ``ell * A`` the alcove whose upper closure holds ``lam + rho``."""
    val = [sum(r[i] * (lam[i] + 1) for i in range(W.rank)) for r in W.roots]
    return tuple(-(-v // ell) for v in val)


def _facet_of_weight(W: AffineWeylGroup, lam, ell: int):
    return facet_of(W, tuple(Fraction(c + 1, ell) for c in lam))


def plot_report(report: dict, out) -> Path:
    """Figure accompanying a verification report.

    Suites indexed by alcoves of a rank-2 type show those alcoves colored by
    outcome; every other report becomes a bar chart of passed and failed
    instances.
    """
    rs = build_root_system(report["type"])
    instances = report["instances"]
    alcove_based = instances and all("alcove" in x for x in instances)
    if rs.rank == 2 and alcove_based:
        extent = max(3, max(max(abs(c) for c in x["alcove"]) for x in instances))
        p = ArrangementPlot(rs, 1, extent).arrangement()
        for x in instances:
            p.shade_alcove(tuple(x["alcove"]), color=PASS_COLOR if x["pass"] else FAIL_COLOR)
        p.dominant_cone()
        p.dominant_cone(shift=1, dashed=True)
        p.title(f"{report['suite']} on {report['type']}: {report['total'] - report['failed']}/{report['total']} pass")
        return p.save(out)
    fig = Figure(figsize=(4, 3))
    ax = fig.add_subplot(1, 1, 1)
    ax.bar(["pass", "fail"], [report["total"] - report["failed"], report["failed"]],
           color=[PASS_COLOR, FAIL_COLOR])
    ax.set_title(f"{report['suite']} on {report['type']}", fontsize=9)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "path"}):
        fig.savefig(out, format="svg", metadata={"Date": None})
    return out
