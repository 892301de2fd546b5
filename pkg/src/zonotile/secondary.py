"""Vertex vectors of tilings, the chamber atlas of regular tilings and HSP skeletons."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .geometry import Configuration, eulerian, rank
from .lp import feasible
from .tilings import (
    FlipRecord,
    Tiling,
    apply_flip,
    canonical_height,
    combinatorial_flips,
    flip_data,
    opposite,
    sigma_from_heights,
    tiling_from_sigma,
)

__all__ = [
    "phi", "vert_gkz", "vert_fib", "vert_fib_k", "verify_vertex_identities",
    "ChamberAtlas", "enumerate_regular", "HspSkeleton", "hsp_skeleton", "feasible",
    "ResourceLimit", "adjacent_levels", "k_classes", "affine_dimension", "realizing_height",
]


class ResourceLimit(RuntimeError):
    pass


def _zero(n):
    return [Fraction(0)] * n


def _add(acc, S, x):
    for i in S:
        acc[i - 1] += x


def phi(T: Tiling, k: int) -> tuple:
    """Sum of vol(B) e_A over the tiles with |A| = k."""
    cfg = T.cfg
    acc = _zero(cfg.n)
    if 1 <= k <= cfg.n - cfg.d:
        for B, A in T.tiles.items():
            if len(A) == k:
                _add(acc, A, cfg.vol(B))
    return tuple(acc)


def vert_gkz(T: Tiling) -> tuple:
    cfg = T.cfg
    acc = _zero(cfg.n)
    scale = factorial(cfg.d - 1)
    for B, A in T.tiles.items():
        if not A:
            _add(acc, B, cfg.vol(B) / scale)
    return tuple(acc)


def vert_fib(T: Tiling) -> tuple:
    cfg = T.cfg
    acc = _zero(cfg.n)
    for B, A in T.tiles.items():
        w = cfg.vol(B)
        _add(acc, A, w)
        _add(acc, B, w / 2)
    return tuple(x / cfg.total_volume for x in acc)


def vert_fib_k(T: Tiling, k: int) -> tuple:
    """Vertex of the fiber polytope of the hypersimplex section at level k.

    Only meaningful for d >= 2; for d = 1 the section is a point and the
    tile-wise sum is empty.
    """
    cfg = T.cfg
    d = cfg.d
    if not 1 <= k <= cfg.n - 1:
        raise ValueError(f"level {k} outside [1, {cfg.n - 1}]")
    if d == 1:
        raise ValueError("hypersimplex fiber vertices need d >= 2")
    acc = _zero(cfg.n)
    for B, A in T.tiles.items():
        r = k - len(A)
        if 1 <= r <= d - 1:
            w = cfg.vol(B) * eulerian(d - 1, r - 1)
            _add(acc, A, w * d)
            _add(acc, B, w * r)
    scale = factorial(d) * cfg.beta(k)
    return tuple(x / scale for x in acc)


def adjacent_levels(T: Tiling, k: int) -> bool:
    """Sum over |A|=k of vol(B)(e_A + e_B) equals sum over |A|=k+1 of vol(B) e_A plus delta(k)."""
    cfg = T.cfg
    lhs = _zero(cfg.n)
    rhs = list(cfg.delta(k))
    for B, A in T.tiles.items():
        if len(A) == k:
            _add(lhs, A, cfg.vol(B))
            _add(lhs, B, cfg.vol(B))
        elif len(A) == k + 1:
            _add(rhs, A, cfg.vol(B))
    return lhs == rhs


def _lin(*terms):
    """Sum of coefficient * vector pairs."""
    n = len(terms[0][1])
    acc = _zero(n)
    for c, v in terms:
        for i, x in enumerate(v):
            acc[i] += c * x
    return tuple(acc)


def verify_vertex_identities(T: Tiling) -> dict:
    """Check the four exact identities linking phi to the classical vertex vectors.

    Returns {name: (ok, failing k or None)}.
    """
    cfg = T.cfg
    n, d = cfg.n, cfg.d
    m = n - d
    report = {}

    rhs = _lin(*[(1, phi(T, k)) for k in range(1, m + 1)],
               *[(Fraction(1, 2), cfg.delta(k)) for k in range(0, m + 1)])
    rhs = tuple(x / cfg.total_volume for x in rhs)
    report["fib"] = (vert_fib(T) == rhs, None)

    if d >= 2:
        bad = None
        for k in range(1, n):
            terms = [(Fraction(eulerian(d, r), factorial(d)), phi(T, k - r)) for r in range(d)]
            terms += [(Fraction(r * eulerian(d - 1, r - 1), factorial(d)), cfg.delta(k - r)) for r in range(1, d)]
            rhs = tuple(x / cfg.beta(k) for x in _lin(*terms))
            if vert_fib_k(T, k) != rhs:
                bad = k
                break
        report["fib_k"] = (bad is None, bad)

    rhs = tuple(x / factorial(d - 1) for x in _lin((1, phi(T, 1)), (1, cfg.delta(0))))
    report["gkz"] = (vert_gkz(T) == rhs, None)

    op = opposite(T)
    bad = None
    for k in range(1, m + 1):
        lhs = _lin((1, phi(T, k)), (1, phi(op, m - k + 1)))
        rhs = _lin((cfg.gamma(k - 1), cfg.unit(cfg.ground)), (-1, cfg.delta(k - 1)))
        if lhs != rhs:
            bad = k
            break
    report["duality"] = (bad is None, bad)
    return report


# -- regular tilings -----------------------------------------------------------------

@dataclass
class Chamber:
    sigma: tuple
    height: tuple
    tiling: Tiling


@dataclass
class AtlasEdge:
    a: int
    b: int
    flip: FlipRecord  # flip taking chamber a to chamber b


@dataclass
class ChamberAtlas:
    cfg: Configuration
    chambers: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.chambers)

    def neighbors(self, i: int):
        return [e.b if e.a == i else e.a for e in self.edges if i in (e.a, e.b)]

    @property
    def adjacency(self) -> list:
        adj = [[] for _ in self.chambers]
        for e in self.edges:
            adj[e.a].append((e.b, e))
            adj[e.b].append((e.a, e))
        return adj

    def find(self, tiling: Tiling):
        """Index of the chamber whose tiling equals ``tiling``, or None."""
        try:
            return self.index.get(tiling.sigma)
        except ValueError:
            return None


def _reduced_system(cfg, sigma):
    return [(v, s) for v, s in zip(cfg._reduced_alphas, sigma)]


def realizing_height(cfg: Configuration, sigma) -> tuple | None:
    """A height vector realizing the orientation, or None if none exists."""
    ok, y = feasible(_reduced_system(cfg, sigma), len(cfg.free_coordinates))
    return cfg.expand(y) if ok else None


def enumerate_regular(cfg: Configuration, *, prefilter: bool = True, max_chambers: int | None = None) -> ChamberAtlas:
    """All regular tilings by breadth-first search across walls of the secondary arrangement.

    With ``prefilter`` only circuits whose flip tiles are present are tested for
    realizability; every wall of a chamber passes that test, so the atlas is the same.
    """
    h0 = canonical_height(cfg)
    sigma0 = sigma_from_heights(cfg, h0)
    atlas = ChamberAtlas(cfg)
    atlas.chambers.append(Chamber(sigma0, h0, tiling_from_sigma(cfg, sigma0)))
    atlas.index[sigma0] = 0
    seen_edges = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        ch = atlas.chambers[i]
        if prefilter:
            records = combinatorial_flips(ch.tiling)
        else:
            records = [_try_flip(ch.tiling, C) for C in cfg.circuits]
        for idx, rec in _candidates(cfg, records, prefilter):
            sigma = ch.sigma[:idx] + (-ch.sigma[idx],) + ch.sigma[idx + 1:]
            j = atlas.index.get(sigma)
            if j is None:
                h = realizing_height(cfg, sigma)
                if h is None:
                    continue
                if rec is None:
                    raise AssertionError(f"wall {cfg.circuits[idx]!r} has no flip tiles")
                if max_chambers is not None and len(atlas.chambers) >= max_chambers:
                    raise ResourceLimit(f"more than {max_chambers} regular tilings")
                j = len(atlas.chambers)
                atlas.chambers.append(Chamber(sigma, h, apply_flip(ch.tiling, None, rec)))
                atlas.index[sigma] = j
                queue.append(j)
            key = (min(i, j), max(i, j))
            if key not in seen_edges:
                seen_edges.add(key)
                atlas.edges.append(AtlasEdge(i, j, rec))
    return atlas


def _try_flip(T, C):
    try:
        return flip_data(T, C)
    except ValueError:
        return None


def _candidates(cfg, records, prefilter):
    if prefilter:
        return [(cfg.circuit_index[r.circuit], r) for r in records]
    return list(enumerate(records))


# -- higher secondary polytopes --------------------------------------------------------

@dataclass
class HspSkeleton:
    k: int
    vertices: list  # distinct phi_k values, one per k-equivalence class
    representatives: list  # chamber index per vertex
    classes: list  # class id per chamber
    edges: set  # unordered pairs of vertex indices
    dimension: int

    def diameter(self) -> int:
        adj = {i: set() for i in range(len(self.vertices))}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        best = 0
        for s in adj:
            dist = {s: 0}
            q = deque([s])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        q.append(w)
            if len(dist) != len(adj):
                raise ValueError("skeleton is disconnected")
            best = max(best, max(dist.values()))
        return best


def affine_dimension(points) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return rank([[a - b for a, b in zip(p, base)] for p in pts[1:]])


def k_classes(atlas: ChamberAtlas, k: int) -> list:
    """Class id per chamber: components after removing flips with k among their levels."""
    parent = list(range(len(atlas.chambers)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in atlas.edges:
        if k not in e.flip.levels:
            parent[root(e.a)] = root(e.b)
    roots = {}
    return [roots.setdefault(root(i), len(roots)) for i in range(len(atlas.chambers))]


def hsp_skeleton(atlas: ChamberAtlas, k: int) -> HspSkeleton:
    cfg = atlas.cfg
    if not 1 <= k <= cfg.n - cfg.d:
        raise ValueError(f"k={k} outside [1, {cfg.n - cfg.d}]")
    classes = k_classes(atlas, k)
    count = max(classes) + 1
    vertices = [None] * count
    reps = [None] * count
    for i, c in enumerate(classes):
        v = phi(atlas.chambers[i].tiling, k)
        if vertices[c] is None:
            vertices[c], reps[c] = v, i
        elif vertices[c] != v:
            raise AssertionError(f"k-equivalent chambers {reps[c]} and {i} have different phi_{k}")
    if len(set(vertices)) != count:
        raise AssertionError("distinct k-equivalence classes share a phi value")
    edges = set()
    for e in atlas.edges:
        if k in e.flip.levels:
            a, b = classes[e.a], classes[e.b]
            edges.add((min(a, b), max(a, b)))
    return HspSkeleton(k, vertices, reps, classes, edges, affine_dimension(vertices))
