"""Plabic tilings and plabic graphs read off horizontal sections of tilings (d = 3).

A plabic graph is stored through its plabic tiling: every interior vertex is a
colored convex cell whose corners are k-subsets (the faces around that vertex),
and every graph edge is dual to a cell side.  Contracting an edge between two
interior vertices of the same color merges the two cells.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .geometry import Configuration, det
from .secondary import ChamberAtlas, phi
from .tilings import Tiling, sigma_from_heights

WHITE, BLACK = "white", "black"


class StrandError(ValueError):
    pass


def _check_polygon(cfg: Configuration) -> None:
    if cfg.d != 3:
        raise ValueError(f"plabic constructions need d = 3, got d = {cfg.d}")


def orientation(cfg: Configuration) -> int:
    """+1 if the points are numbered counterclockwise, -1 if clockwise."""
    _check_polygon(cfg)
    return 1 if det(cfg.lift[:3]) > 0 else -1


def is_convex_polygon(cfg: Configuration) -> bool:
    """Vertices of a convex n-gon listed in cyclic order."""
    if cfg.d != 3:
        return False
    s = orientation(cfg)
    return all(s * det([cfg.v(i) for i in T]) > 0 for T in combinations(cfg.ground, 3))


def _require_polygon(cfg):
    _check_polygon(cfg)
    if not is_convex_polygon(cfg):
        raise ValueError("configuration is not a convex polygon in cyclic order")


# -- compatibility -----------------------------------------------------------------

def _content(vec) -> Fraction:
    nums = [x for x in vec if x]
    den = 1
    for x in nums:
        den = den * x.denominator // gcd(den, x.denominator)
    g = 0
    for x in nums:
        g = gcd(g, int(x * den))
    return Fraction(g, den)


def mu(cfg: Configuration, h: Sequence, a: int, b: int, c: int, d: int) -> Fraction:
    """<h, alpha> for the circuit ({a,c},{b,d}) with alpha scaled to be primitive."""
    if not a < b < c < d:
        raise ValueError("need a < b < c < d")
    from .geometry import signed

    alpha = cfg.alpha_total(signed([a, c], [b, d]))
    return sum((Fraction(x) * y for x, y in zip(h, alpha)), Fraction(0)) / _content(alpha)


def compat_set(cfg: Configuration, k: int, h: Sequence) -> frozenset:
    """k-subsets I that are compatible with h on every 4-tuple."""
    _require_polygon(cfg)
    sigma_from_heights(cfg, h)  # rejects non-generic heights
    signs = {}
    for a, b, c, d in combinations(cfg.ground, 4):
        signs[a, b, c, d] = mu(cfg, h, a, b, c, d) > 0
    out = []
    for I in combinations(cfg.ground, k):
        s = set(I)
        ok = True
        for (a, b, c, d), positive in signs.items():
            ac = a in s and c in s and b not in s and d not in s
            bd = b in s and d in s and a not in s and c not in s
            if (ac and not positive) or (bd and positive):
                ok = False
                break
        if ok:
            out.append(frozenset(I))
    return frozenset(out)


def cyclic_interval(s: int, t: int, n: int) -> list:
    """[s, t) read cyclically in 1..n."""
    out, i = [], s
    while i != t:
        out.append(i)
        i = i % n + 1
    return out


def large_height_set(n: int, k: int, w: Sequence[int]) -> frozenset:
    """Compatible k-sets for heights h_{w_1} >> h_{w_2} >> ... >> h_{w_n} > 0."""
    w = list(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError("w must be a permutation of 1..n")
    rank_of = {x: i for i, x in enumerate(w)}  # smaller rank = larger height

    def top(j, S):
        return set(sorted(S, key=rank_of.__getitem__)[:j])

    out = {frozenset(top(k, range(1, n + 1)))}
    for s in range(1, n + 1):
        for r in range(1, k + 1):
            t = (s - 1 + r) % n + 1
            head = cyclic_interval(s, t, n) if r < n else list(range(1, n + 1))
            if len(head) != r:
                continue
            rest = [i for i in range(1, n + 1) if i not in head]
            out.add(frozenset(head) | frozenset(top(k - r, rest)))
    return frozenset(out)


def large_heights(cfg: Configuration, w: Sequence[int]) -> tuple:
    """A height vector ordered by w with gaps large enough for every circuit."""
    entries = [abs(x) for a in cfg._alpha_totals for x in a if x]
    M = 4 * max(entries) / min(entries) + 1
    M = int(M) + 1
    h = [Fraction(0)] * cfg.n
    for pos, i in enumerate(w):
        h[i - 1] = Fraction(M) ** (cfg.n - pos)
    return tuple(h)


# -- plabic tilings ------------------------------------------------------------------

@dataclass(frozen=True)
class PlabicTiling:
    k: int
    n: int
    positions: dict  # frozenset label -> (x, y)
    triangles: tuple  # ((S1, S2, S3), color)

    @property
    def edges(self) -> frozenset:
        out = set()
        for tri, _ in self.triangles:
            for S, T in combinations(tri, 2):
                out.add(frozenset((S, T)))
        return frozenset(out)

    @property
    def labels(self) -> frozenset:
        return frozenset(self.positions)


def label_position(cfg: Configuration, S: Iterable[int]) -> tuple:
    x = Fraction(0)
    y = Fraction(0)
    for i in S:
        x += cfg.points[i - 1][0]
        y += cfg.points[i - 1][1]
    return (x, y)


def section(T: Tiling, k: int) -> PlabicTiling:
    cfg = T.cfg
    _require_polygon(cfg)
    if not 1 <= k <= cfg.n - 1:
        raise ValueError(f"k={k} outside [1, {cfg.n - 1}]")
    triangles = []
    for B, A in sorted(T.tiles.items()):
        if len(A) == k - 1:
            triangles.append((tuple(A | {b} for b in B), WHITE))
        elif len(A) == k - 2:
            triangles.append((tuple(A | (set(B) - {b}) for b in B), BLACK))
    labels = {S for tri, _ in triangles for S in tri}
    if not triangles:  # a single face: impossible for 1 <= k <= n-1 with n >= 3
        raise ValueError("empty section")
    positions = {S: label_position(cfg, S) for S in labels}
    return PlabicTiling(k, cfg.n, positions, tuple(triangles))


# -- plabic graphs -------------------------------------------------------------------

def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


@dataclass(frozen=True)
class PlabicGraph:
    """Interior vertices are colored cells; cycles run counterclockwise in the
    working frame, which is the plane mirrored when the polygon is numbered
    counterclockwise (so that boundary vertices 1..n run clockwise)."""

    k: int
    n: int
    positions: dict
    cells: tuple  # (cycle of labels, color)
    mirror: bool

    @property
    def faces(self) -> frozenset:
        return frozenset(self.positions)

    @property
    def key(self) -> frozenset:
        return frozenset((frozenset(cyc), col) for cyc, col in self.cells)

    def _pos(self, S):
        x, y = self.positions[S]
        return (-x, y) if self.mirror else (x, y)

    def _edge_cells(self) -> dict:
        out = {}
        for idx, (cyc, _) in enumerate(self.cells):
            for i in range(len(cyc)):
                e = frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))
                out.setdefault(e, []).append(idx)
        return out

    @property
    def is_trivalent(self) -> bool:
        return all(len(cyc) == 3 for cyc, _ in self.cells)

    @property
    def is_bipartite(self) -> bool:
        for e, cells in self._edge_cells().items():
            if len(cells) == 2 and self.cells[cells[0]][1] == self.cells[cells[1]][1]:
                return False
        return True

    def boundary_edges(self) -> dict:
        """Cell side -> boundary vertex index, for sides on the outer polygon."""
        out = {}
        for e, cells in self._edge_cells().items():
            if len(cells) == 1:
                # consecutive boundary faces [i, i+k-1] and [i+1, i+k] meet at vertex i
                for S, T in (tuple(e), tuple(e)[::-1]):
                    (i,) = S - T
                    stop = (i + self.k - 1) % self.n + 1
                    if S == frozenset(cyclic_interval(i, stop, self.n)) and T - S == {stop}:
                        out[e] = i
                        break
                else:
                    raise ValueError("boundary side between non-interval labels")
        return out


def _orient_triangle(tri, pos):
    a, b, c = tri
    return (a, b, c) if _cross(pos(a), pos(b), pos(c)) > 0 else (a, c, b)


def dual_plabic(pt: PlabicTiling, cfg: Configuration) -> PlabicGraph:
    mirror = orientation(cfg) == 1
    g = PlabicGraph(pt.k, pt.n, pt.positions, (), mirror)
    cells = tuple((_orient_triangle(tri, g._pos), col) for tri, col in pt.triangles)
    return PlabicGraph(pt.k, pt.n, pt.positions, cells, mirror)


def contract(G: PlabicGraph, mode: str = "bipartite") -> PlabicGraph:
    """Merge adjacent cells of the same color (of one color only for the partite modes)."""
    colors = {"bipartite": {WHITE, BLACK}, "blackpartite": {BLACK}, "whitepartite": {WHITE}}[mode]
    parent = list(range(len(G.cells)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, cells in G._edge_cells().items():
        if len(cells) == 2:
            a, b = cells
            if G.cells[a][1] == G.cells[b][1] and G.cells[a][1] in colors:
                parent[root(a)] = root(b)
    groups = {}
    for idx in range(len(G.cells)):
        groups.setdefault(root(idx), []).append(idx)
    cells = []
    for members in groups.values():
        color = G.cells[members[0]][1]
        if len(members) == 1:
            cells.append(G.cells[members[0]])
            continue
        # outer boundary of the union: directed sides whose reverse is not present
        sides = {}
        for m in members:
            cyc = G.cells[m][0]
            for i in range(len(cyc)):
                sides[cyc[i]] = sides.get(cyc[i], []) + [cyc[(i + 1) % len(cyc)]]
        directed = {(u, v) for u, vs in sides.items() for v in vs}
        outer = {u: v for u, v in directed if (v, u) not in directed}
        start = min(outer, key=sorted)
        cyc = [start]
        while outer[cyc[-1]] != start:
            cyc.append(outer[cyc[-1]])
            if len(cyc) > len(outer):
                raise ValueError("merged cell is not a disk")
        cells.append((tuple(cyc), color))
    cells.sort(key=lambda c: (sorted(sorted(S) for S in c[0]), c[1]))
    return PlabicGraph(G.k, G.n, G.positions, tuple(cells), G.mirror)


@dataclass(frozen=True)
class StrandReport:
    trip: dict  # boundary start -> boundary end
    labels: frozenset  # recomputed face labels


def strands(G: PlabicGraph) -> StrandReport:
    """Follow every strand from its boundary vertex; recompute face labels from them."""
    edge_cells = G._edge_cells()
    bnd = G.boundary_edges()
    start_side = {i: e for e, i in bnd.items()}
    # position of each side inside its cells' cycles
    where = {}
    for idx, (cyc, _) in enumerate(G.cells):
        m = len(cyc)
        for i in range(m):
            where[idx, frozenset((cyc[i], cyc[(i + 1) % m]))] = i

    trip = {}
    left_of = {}
    used = {}
    for i in sorted(start_side):
        e = start_side[i]
        (cell,) = edge_cells[e]
        path_left, crossed = [], []
        steps = 0
        while True:
            cyc, color = G.cells[cell]
            m = len(cyc)
            pos = where[cell, e]
            # entering across side (cyc[pos], cyc[pos+1]): the face on the left is cyc[pos]
            path_left.append(cyc[pos])
            crossed.append(e)
            key = (e, cell)
            if key in used:
                raise StrandError(f"strand from {i} repeats an edge")
            used[key] = i
            nxt = (pos + 1) % m if color == BLACK else (pos - 1) % m
            e = frozenset((cyc[nxt], cyc[(nxt + 1) % m]))
            crossed.append(e)
            others = [c for c in edge_cells[e] if c != cell]
            if not others:
                # leaving the disk across side (cyc[nxt], cyc[nxt+1]): left face is cyc[nxt+1]
                path_left.append(cyc[(nxt + 1) % m])
                trip[i] = bnd[e]
                break
            cell = others[0]
            steps += 1
            if steps > 4 * len(G.cells) + 4:
                raise StrandError(f"strand from {i} does not reach the boundary")
        left_of[trip[i]] = (set(path_left), set(crossed))

    # every side is traversed once in each direction
    for e, cells in edge_cells.items():
        for c in cells:
            if (e, c) not in used and len(cells) == 2:
                raise StrandError("some edge is not covered by strands in both directions")

    adjacency = {}
    for e in edge_cells:
        S, T = tuple(e)
        adjacency.setdefault(S, []).append((T, e))
        adjacency.setdefault(T, []).append((S, e))
    membership = {S: set() for S in G.positions}
    for end, (seeds, crossed) in left_of.items():
        seen = set(seeds)
        queue = deque(seeds)
        while queue:
            S = queue.popleft()
            for T, e in adjacency[S]:
                if e not in crossed and T not in seen:
                    seen.add(T)
                    queue.append(T)
        for S in seen:
            membership[S].add(end)
    labels = frozenset(frozenset(v) for v in membership.values())
    return StrandReport(trip, labels)


def check_plabic(G: PlabicGraph) -> None:
    """Raise unless G is a (k,n)-plabic graph whose strands reproduce its face labels."""
    rep = strands(G)
    n, k = G.n, G.k
    for i in range(1, n + 1):
        if rep.trip.get(i) != (i + k - 1) % n + 1:
            raise StrandError(f"trip permutation sends {i} to {rep.trip.get(i)}, expected {(i + k - 1) % n + 1}")
    if len(G.faces) != k * (n - k) + 1:
        raise StrandError(f"{len(G.faces)} faces, expected {k * (n - k) + 1}")
    if rep.labels != G.faces:
        raise StrandError("strand face labels disagree with the tiling labels")


def plabic_graph(T: Tiling, k: int, mode: str | None = None) -> PlabicGraph:
    G = dual_plabic(section(T, k), T.cfg)
    return contract(G, mode) if mode else G


# -- areas ---------------------------------------------------------------------------

def polygon_area(pts) -> Fraction:
    s = Fraction(0)
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def area_vector(T: Tiling, k: int) -> tuple:
    """2 * sum of white cell areas of the bipartite graph at level k+1, by cell label."""
    cfg = T.cfg
    acc = [Fraction(0)] * cfg.n
    if not 1 <= k <= cfg.n - 3:
        return tuple(acc)
    G = plabic_graph(T, k + 1, "bipartite")
    for cyc, color in G.cells:
        if color != WHITE:
            continue
        common = frozenset.intersection(*cyc)
        if len(common) != k:
            raise AssertionError("white cell labels do not share exactly k elements")
        area = polygon_area([G.positions[S] for S in cyc])
        for i in common:
            acc[i - 1] += 2 * area
    return tuple(acc)


def area_identity(T: Tiling, k: int) -> bool:
    return area_vector(T, k) == phi(T, k)


# -- graphs over the atlas -------------------------------------------------------------

def face_labels(T: Tiling, k: int) -> frozenset:
    return frozenset(I for I in T.vert if len(I) == k)


@dataclass
class MoveGraph:
    k: int
    nodes: list  # face-label sets of bipartite (k+1, n)-graphs
    node_of: list  # node per chamber
    edges: set

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)


def move_graph(atlas: ChamberAtlas, k: int) -> MoveGraph:
    """Bipartite (k+1,n)-graphs over the atlas joined by square moves (flips of level k)."""
    _require_polygon(atlas.cfg)
    index = {}
    node_of = []
    for ch in atlas.chambers:
        key = face_labels(ch.tiling, k + 1)
        node_of.append(index.setdefault(key, len(index)))
    edges = set()
    for e in atlas.edges:
        if k in e.flip.levels:
            a, b = node_of[e.a], node_of[e.b]
            if a == b:
                raise AssertionError("a level-k flip left the bipartite graph unchanged")
            edges.add(frozenset((a, b)))
    nodes = [None] * len(index)
    for key, i in index.items():
        nodes[i] = key
    return MoveGraph(k, nodes, node_of, edges)


def linked_whitepartite(T: Tiling, k: int) -> tuple:
    """(black-partite (k,n)-graph, white-partite (k+1,n)-graph) of the same tiling."""
    return plabic_graph(T, k, "blackpartite"), plabic_graph(T, k + 1, "whitepartite")


def move_pattern(before: Tiling, after: Tiling, k: int) -> dict:
    """Compare the sections of two tilings related by a flip of level k.

    Returns {level: kind} with kind in "same", "M1", "M2", "M3" or "other".
    """
    n = before.cfg.n
    out = {}
    for r in range(1, n):
        g1, g2 = plabic_graph(before, r), plabic_graph(after, r)
        if g1.key == g2.key:
            out[r] = "same"
        elif g1.faces == g2.faces and contract(g1, "whitepartite").key == contract(g2, "whitepartite").key:
            out[r] = "M1"
        elif g1.faces == g2.faces and contract(g1, "blackpartite").key == contract(g2, "blackpartite").key:
            out[r] = "M3"
        elif len(g1.faces ^ g2.faces) == 2:
            out[r] = "M2"
        else:
            out[r] = "other"
    return out


def expected_pattern(n: int, k: int) -> dict:
    return {r: {k: "M1", k + 1: "M2", k + 2: "M3"}.get(r, "same") for r in range(1, n)}


# -- classes of bipartite graphs by their normal cones ----------------------------------

def _label_constraints(cfg: Configuration, labels: Iterable) -> dict:
    """Circuit index -> required sign forced by compatibility of the given labels."""
    req = {}
    quads = list(combinations(cfg.ground, 4))
    from .geometry import signed

    for I in labels:
        for a, b, c, d in quads:
            ac = a in I and c in I and b not in I and d not in I
            bd = b in I and d in I and a not in I and c not in I
            if ac or bd:
                idx, _ = cfg.canonical_circuit(signed([a, c], [b, d]))
                s = 1 if ac else -1
                if req.setdefault(idx, s) != s:
                    raise AssertionError("contradictory compatibility constraints")
    return req


def _nudge(cfg, h, direction, required):
    """Move h slightly along ``direction`` to a generic point keeping the required signs."""
    from .tilings import is_generic

    top = max(abs(x) for x in direction)
    step = Fraction(1, 2)
    for _ in range(400):
        h2 = tuple(a + step * b / top for a, b in zip(h, direction))
        if is_generic(cfg, h2) and all(
            s * sum(x * z for x, z in zip(cfg._alpha_totals[j], h2)) > 0 for j, s in required.items()
        ):
            return h2
        step /= 2
    raise ArithmeticError("could not find a generic point in the cone")


def bipartite_classes(cfg: Configuration, k: int) -> list:
    """Face-label sets of all bipartite (k,n)-graphs of regular tilings.

    Walks the normal fan of the higher secondary polytope one cone at a time: the
    cone of a label set L is cut out by the circuit signs that keep every member
    of L compatible, and its facets lead to the neighbouring label sets.
    """
    from .lp import feasible
    from .tilings import canonical_height

    _require_polygon(cfg)
    vecs = cfg._reduced_alphas
    dim = len(cfg.free_coordinates)
    g = canonical_height(cfg)
    start = compat_set(cfg, k, g)
    seen = {start}
    queue = deque([start])
    while queue:
        L = queue.popleft()
        req = _label_constraints(cfg, L)
        for idx in req:
            system = [(vecs[j], -s if j == idx else s) for j, s in req.items()]
            ok, y = feasible(system, dim)
            if not ok:
                continue
            flipped = {j: (-s if j == idx else s) for j, s in req.items()}
            h2 = _nudge(cfg, cfg.expand(y), g, flipped)
            L2 = compat_set(cfg, k, h2)
            if L2 not in seen:
                seen.add(L2)
                queue.append(L2)
    return sorted(seen, key=lambda L: sorted(sorted(I) for I in L))
