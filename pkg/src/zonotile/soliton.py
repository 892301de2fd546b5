"""Tropical contour plots of KP line solitons for the full positroid cell.

Regions are labeled by k-subsets I and carry the linear functional
F_I(x, y) = sum over i in I of (kappa_i x + kappa_i^2 y + h_i).  Each region is
computed exactly as the box clipped by the half-planes F_I >= F_J.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .geometry import Configuration, as_rat, rat_str
from .plabic import BLACK, WHITE, compat_set, large_height_set, mu
from .tilings import sigma_from_heights

__all__ = [
    "KappaTimes", "ContourPlot", "contour", "auto_box", "asymptotic_labels",
    "emit", "parse_json",
]


@dataclass(frozen=True)
class KappaTimes:
    kappa: tuple
    times: tuple  # t_3, ..., t_n

    def __post_init__(self):
        kappa = tuple(as_rat(x) for x in self.kappa)
        times = tuple(as_rat(x) for x in self.times)
        if len(kappa) < 3:
            raise ValueError("need at least three kappa parameters")
        if any(a >= b for a, b in zip(kappa, kappa[1:])):
            raise ValueError("kappa must be strictly increasing")
        if len(times) != len(kappa) - 2:
            raise ValueError(f"expected {len(kappa) - 2} times t_3..t_n, got {len(times)}")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "times", times)

    @property
    def n(self) -> int:
        return len(self.kappa)

    @property
    def heights(self) -> tuple:
        return tuple(sum((c ** j * t for j, t in enumerate(self.times, start=3)), Fraction(0)) for c in self.kappa)

    @property
    def config(self) -> Configuration:
        return Configuration(tuple((c, c * c) for c in self.kappa))

    def scaled(self, factor) -> "KappaTimes":
        factor = as_rat(factor)
        return KappaTimes(self.kappa, tuple(factor * t for t in self.times))


@dataclass(frozen=True)
class ContourPlot:
    k: int
    box: tuple  # ((x0, y0), (x1, y1))
    regions: tuple  # (label, polygon) with label a sorted tuple
    segments: tuple  # (label, label, endpoint, endpoint)
    vertices: tuple  # (point, color, three labels)

    @property
    def labels(self) -> frozenset:
        return frozenset(frozenset(lab) for lab, _ in self.regions)

    @property
    def adjacency(self) -> frozenset:
        return frozenset(frozenset((frozenset(a), frozenset(b))) for a, b, _, _ in self.segments)

    def combinatorics(self) -> tuple:
        """Labels, adjacency and colored vertex label triples, without coordinates."""
        colored = frozenset((frozenset(frozenset(x) for x in labs), col) for _, col, labs in self.vertices)
        return self.labels, self.adjacency, colored


# -- geometry ------------------------------------------------------------------------

def _functional(kt: KappaTimes, h, label):
    return (
        sum((kt.kappa[i - 1] for i in label), Fraction(0)),
        sum((kt.kappa[i - 1] ** 2 for i in label), Fraction(0)),
        sum((h[i - 1] for i in label), Fraction(0)),
    )


def _value(f, p):
    return f[0] * p[0] + f[1] * p[1] + f[2]


def _clip(poly, g):
    """Keep the part of a convex polygon where g(p) = a x + b y + c >= 0."""
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        vp, vq = _value(g, p), _value(g, q)
        if vp >= 0:
            out.append(p)
        if (vp > 0 and vq < 0) or (vp < 0 and vq > 0):
            s = vp / (vp - vq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    dedup = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _area2(poly):
    return sum(
        (poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1] for i in range(len(poly))),
        Fraction(0),
    )


def _tie_point(f, g, e):
    """The point where three functionals agree, if unique."""
    a1, b1, c1 = (f[0] - g[0], f[1] - g[1], g[2] - f[2])
    a2, b2, c2 = (f[0] - e[0], f[1] - e[1], e[2] - f[2])
    den = a1 * b2 - a2 * b1
    if den == 0:
        return None
    return ((c1 * b2 - c2 * b1) / den, (a1 * c2 - a2 * c1) / den)


def _candidates(kt: KappaTimes, k: int, all_labels: bool):
    h = kt.heights
    if not any(kt.times):
        raise ValueError("all times are zero")
    sigma_from_heights(kt.config, h)  # raises NonGenericHeight naming the circuit
    if all_labels:
        labels = [tuple(c) for c in combinations(range(1, kt.n + 1), k)]
    else:
        labels = sorted(tuple(sorted(I)) for I in compat_set(kt.config, k, h))
    return h, labels


def auto_box(kt: KappaTimes, k: int, margin=1) -> tuple:
    """A box containing every vertex of the contour plot with room to spare."""
    h, labels = _candidates(kt, k, False)
    fs = {lab: _functional(kt, h, lab) for lab in labels}
    pts = []
    for a, b, c in combinations(labels, 3):
        p = _tie_point(fs[a], fs[b], fs[c])
        if p is None:
            continue
        top = _value(fs[a], p)
        if all(_value(f, p) <= top for f in fs.values()):
            pts.append(p)
    if not pts:
        pts = [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1)) * as_rat(margin)
    return ((min(xs) - pad, min(ys) - pad), (max(xs) + pad, max(ys) + pad))


def contour(kt: KappaTimes, k: int, box=None, *, all_labels: bool = False) -> ContourPlot:
    """Exact contour plot of max_I F_I inside ``box``.

    Candidate labels come from the compatibility test unless ``all_labels`` is
    set, in which case every k-subset competes.
    """
    if not 1 <= k <= kt.n - 1:
        raise ValueError(f"k={k} outside [1, {kt.n - 1}]")
    if box is None:
        box = auto_box(kt, k)
    (x0, y0), (x1, y1) = [(as_rat(p[0]), as_rat(p[1])) for p in box]
    if not (x0 < x1 and y0 < y1):
        raise ValueError("box must have positive width and height")
    h, labels = _candidates(kt, k, all_labels)
    fs = {lab: _functional(kt, h, lab) for lab in labels}
    square = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]

    regions = []
    for lab in labels:
        f = fs[lab]
        poly = square
        for other in labels:
            if other == lab:
                continue
            g = fs[other]
            poly = _clip(poly, (f[0] - g[0], f[1] - g[1], f[2] - g[2]))
            if len(poly) < 3:
                break
        if len(poly) >= 3 and _area2(poly) > 0:
            regions.append((lab, tuple(poly)))

    segments = []
    for (la, pa), (lb, _) in combinations(regions, 2):
        fa, fb = fs[la], fs[lb]
        on = sorted({p for p in pa if _value(fa, p) == _value(fb, p)})
        if len(on) >= 2:
            segments.append((la, lb, on[0], on[-1]))

    def interior(p):
        return x0 < p[0] < x1 and y0 < p[1] < y1

    vertices = []
    corners = sorted({p for _, poly in regions for p in poly if interior(p)})
    for p in corners:
        incident = [s for s in segments if p in (s[2], s[3])]
        if len(incident) < 3:
            continue
        ups = [s for s in incident if (s[3] if s[2] == p else s[2])[1] > p[1]]
        downs = len(incident) - len(ups)
        color = WHITE if len(ups) == 1 else BLACK if downs == 1 else None
        labs = tuple(sorted(lab for lab, poly in regions if p in poly))
        vertices.append((p, color, labs))
    return ContourPlot(k, ((x0, y0), (x1, y1)), tuple(regions), tuple(segments), tuple(vertices))


# -- asymptotics ---------------------------------------------------------------------

def asymptotic_labels(kt: KappaTimes, k: int) -> frozenset:
    """Region labels in the regime where all heights are ordered by kappa.

    Applies when kappa > 0 and the times share a sign, or when only t_3 is
    nonzero.  Positive times give the rectangles cluster, negative times its
    mirror image for the identity permutation.
    """
    n = kt.n
    nonzero = [t for t in kt.times if t]
    if not nonzero:
        raise ValueError("all times are zero")
    only_t3 = all(t == 0 for t in kt.times[1:])
    same_sign = all(t >= 0 for t in kt.times) or all(t <= 0 for t in kt.times)
    if not (only_t3 or (same_sign and kt.kappa[0] > 0)):
        raise ValueError("need kappa > 0 with times of one sign, or only t_3 nonzero")
    positive = nonzero[0] > 0
    w = list(range(n, 0, -1)) if positive else list(range(1, n + 1))
    labels = contour(kt, k).labels
    expected = large_height_set(n, k, w)
    if labels != expected:
        raise AssertionError("contour labels differ from the large-height cluster")
    return labels


def mu_signs(kt: KappaTimes) -> set:
    """Signs of mu over all quadruples a < b < c < d."""
    cfg, h = kt.config, kt.heights
    return {(mu(cfg, h, *q) > 0) - (mu(cfg, h, *q) < 0) for q in combinations(range(1, kt.n + 1), 4)}


# -- output --------------------------------------------------------------------------

def _pt(p):
    return [rat_str(p[0]), rat_str(p[1])]


def _unpt(p):
    return (Fraction(p[0]), Fraction(p[1]))


def to_dict(plot: ContourPlot) -> dict:
    return {
        "k": plot.k,
        "box": [_pt(plot.box[0]), _pt(plot.box[1])],
        "regions": [{"label": list(lab), "polygon": [_pt(p) for p in poly]} for lab, poly in plot.regions],
        "segments": [{"labels": [list(a), list(b)], "ends": [_pt(p), _pt(q)]} for a, b, p, q in plot.segments],
        "vertices": [
            {"pos": _pt(p), "color": col, "faces": [list(x) for x in labs]} for p, col, labs in plot.vertices
        ],
    }


def parse_json(data) -> ContourPlot:
    d = json.loads(data)
    return ContourPlot(
        d["k"],
        (_unpt(d["box"][0]), _unpt(d["box"][1])),
        tuple((tuple(r["label"]), tuple(_unpt(p) for p in r["polygon"])) for r in d["regions"]),
        tuple(
            (tuple(s["labels"][0]), tuple(s["labels"][1]), _unpt(s["ends"][0]), _unpt(s["ends"][1]))
            for s in d["segments"]
        ),
        tuple((_unpt(v["pos"]), v["color"], tuple(tuple(x) for x in v["faces"])) for v in d["vertices"]),
    )


def _svg(plot: ContourPlot, size: int = 600) -> str:
    (x0, y0), (x1, y1) = plot.box
    scale = Fraction(size) / max(x1 - x0, y1 - y0)

    def xy(p):  # y grows upward in the plot and downward in SVG
        return f"{float((p[0] - x0) * scale):.4f}", f"{float((y1 - p[1]) * scale):.4f}"

    w = f"{float((x1 - x0) * scale):.4f}"
    hgt = f"{float((y1 - y0) * scale):.4f}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{hgt}" viewBox="0 0 {w} {hgt}">',
        f'<rect x="0" y="0" width="{w}" height="{hgt}" fill="none" stroke="#999"/>',
    ]
    for a, b, p, q in plot.segments:
        (ax, ay), (bx, by) = xy(p), xy(q)
        out.append(f'<polyline points="{ax},{ay} {bx},{by}" fill="none" stroke="black" stroke-width="1.5"/>')
    for lab, poly in plot.regions:
        cx = sum(p[0] for p in poly) / len(poly)
        cy = sum(p[1] for p in poly) / len(poly)
        tx, ty = xy((cx, cy))
        text = "".join(map(str, lab)) if all(i < 10 for i in lab) else ",".join(map(str, lab))
        out.append(f'<text x="{tx}" y="{ty}" font-size="12" text-anchor="middle">{text}</text>')
    for p, col, _ in plot.vertices:
        vx, vy = xy(p)
        fill = "black" if col == BLACK else "white"
        out.append(f'<circle cx="{vx}" cy="{vy}" r="4" fill="{fill}" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(plot: ContourPlot, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(to_dict(plot), indent=1) + "\n").encode()
    if fmt == "svg":
        return _svg(plot).encode()
    raise ValueError(f"unknown format {fmt!r}")
