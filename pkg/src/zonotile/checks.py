"""Invariant and identity checks over the full atlas of a configuration.

Each check yields a ``Check`` row; nothing here raises on a failed identity.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .geometry import Configuration, dot, rank
from .secondary import (
    ChamberAtlas,
    adjacent_levels,
    enumerate_regular,
    hsp_skeleton,
    phi,
    verify_vertex_identities,
)
from .tilings import (
    InvalidTiling,
    is_generic,
    opposite,
    sigma_from_tiling,
    tiling_from_heights,
    validate,
)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail else "")


def worker_count() -> int:
    """Process count from ZONOTILE_THREADS, defaulting to 1."""
    raw = os.environ.get("ZONOTILE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _tiling_checks(args):
    """Per-chamber checks; returns {name: first failure detail or None}."""
    index, T, sigma = args
    cfg = T.cfg
    out = {}

    def fail(name, detail):
        if out.get(name) is None:
            out[name] = detail

    for name, (ok, bad) in verify_vertex_identities(T).items():
        out.setdefault(f"identity {name}", None)
        if not ok:
            fail(f"identity {name}", f"chamber {index}, k={bad}")
    out.setdefault("orientation roundtrip", None)
    try:
        validate(T)
        if sigma_from_tiling(T) != sigma:
            fail("orientation roundtrip", f"chamber {index}")
    except InvalidTiling as exc:
        fail("orientation roundtrip", f"chamber {index}: {exc}")
    out.setdefault("opposite involution", None)
    if opposite(opposite(T)).key != T.key:
        fail("opposite involution", f"chamber {index}")
    out.setdefault("adjacent levels", None)
    for k in range(0, cfg.n - cfg.d + 1):
        if not adjacent_levels(T, k):
            fail("adjacent levels", f"chamber {index}, k={k}")
    if _is_polygon(cfg):
        from .plabic import StrandError, area_identity, check_plabic, face_labels, plabic_graph

        out.setdefault("plabic strands", None)
        out.setdefault("area identity", None)
        for k in range(1, cfg.n):
            try:
                G = plabic_graph(T, k)
                check_plabic(G)
                if G.faces != face_labels(T, k):
                    fail("plabic strands", f"chamber {index}, k={k}: face labels")
            except StrandError as exc:
                fail("plabic strands", f"chamber {index}, k={k}: {exc}")
        for k in range(0, cfg.n - 1):
            if not area_identity(T, k):
                fail("area identity", f"chamber {index}, k={k}")
    return out


def _is_polygon(cfg):
    if cfg.d != 3:
        return False
    from .plabic import is_convex_polygon

    return is_convex_polygon(cfg)


def _proportional(u, v) -> bool:
    """u is a rational multiple of v."""
    return rank([list(u), list(v)]) <= 1


def atlas_checks(atlas: ChamberAtlas, *, seed: int = 0, samples: int = 20, workers: int | None = None) -> list:
    cfg = atlas.cfg
    n, d = cfg.n, cfg.d
    workers = worker_count() if workers is None else workers
    jobs = [(i, ch.tiling, ch.sigma) for i, ch in enumerate(atlas.chambers)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_tiling_checks, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_tiling_checks(j) for j in jobs]
    merged = {}
    for res in results:
        for name, detail in res.items():
            if merged.get(name) is None:
                merged[name] = detail
    rows = [Check(name, detail is None, detail or "") for name, detail in merged.items()]

    # chambers from heights
    bad = ""
    for ch in atlas.chambers:
        if tiling_from_heights(cfg, ch.height).key != ch.tiling.key:
            bad = "witness height does not reproduce its tiling"
            break
        neg = tuple(-x for x in ch.height)
        if tiling_from_heights(cfg, neg).key != opposite(ch.tiling).key:
            bad = "opposite tiling differs from the tiling of -h"
            break
    rows.append(Check("chamber heights", not bad, bad))

    skeletons = {k: hsp_skeleton(atlas, k) for k in range(1, n - d + 1)}
    dims = {k: sk.dimension for k, sk in skeletons.items()}
    rows.append(Check("skeleton dimension", all(v == n - d for v in dims.values()) if n > d else True,
                      ", ".join(f"k={k}: {v}" for k, v in dims.items())))

    bad = ""
    for k, sk in skeletons.items():
        other = skeletons[n - d - k + 1]
        g = cfg.gamma(k - 1)
        dl = cfg.delta(k - 1)
        mirrored = sorted(tuple(g - a - b for a, b in zip(v, dl)) for v in other.vertices)
        if sorted(sk.vertices) != mirrored:
            bad = f"k={k}"
            break
    rows.append(Check("skeleton duality", not bad, bad))

    bad = ""
    for e in atlas.edges:
        C = e.flip.circuit
        alpha = cfg.alpha_total(C)
        for k in e.flip.levels:
            diff = [a - b for a, b in zip(phi(atlas.chambers[e.b].tiling, k), phi(atlas.chambers[e.a].tiling, k))]
            if not any(diff) or not _proportional(diff, alpha):
                bad = f"edge {e.a}-{e.b}, k={k}"
                break
        if bad:
            break
    rows.append(Check("edge directions", not bad, bad))

    rng = random.Random(seed)
    bad = compat_bad = ""
    tried = 0
    while tried < samples:
        h = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 6)) for _ in range(n))
        if not is_generic(cfg, h):
            continue
        tried += 1
        T = tiling_from_heights(cfg, h)
        j = atlas.find(T)
        if j is None:
            bad = "random height gives a tiling outside the atlas"
            break
        for k, sk in skeletons.items():
            scores = [dot(h, v) for v in sk.vertices]
            top = max(scores)
            winner = sk.vertices[scores.index(top)]
            if scores.count(top) != 1 or winner != phi(T, k):
                bad = f"k={k}"
                break
        if bad:
            break
        if _is_polygon(cfg):
            from .plabic import compat_set, face_labels

            for k in range(1, n):
                if compat_set(cfg, k, h) != face_labels(T, k) and not compat_bad:
                    compat_bad = f"k={k}"
    rows.append(Check("support function", not bad, bad))
    if _is_polygon(cfg):
        rows.append(Check("compatibility", not compat_bad, compat_bad))
    return rows


def config_report(cfg: Configuration, *, seed: int = 0, workers: int | None = None) -> tuple:
    """(atlas, rows) with every check applicable to ``cfg``."""
    atlas = enumerate_regular(cfg)
    return atlas, atlas_checks(atlas, seed=seed, workers=workers)
