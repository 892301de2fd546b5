"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 verification failure, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .geometry import Configuration, as_rat, rat_str
from .secondary import ResourceLimit, enumerate_regular, hsp_skeleton, k_classes, phi, verify_vertex_identities
from .tilings import NonGenericHeight, canonical_height, tiling_from_heights

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_LIMIT = 0, 2, 3, 4


class InputError(ValueError):
    pass


# -- input -----------------------------------------------------------------------------

def _rat(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return as_rat(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {x!r}") from exc


def _vector(raw, what):
    if not isinstance(raw, list):
        raise InputError(f"{what} must be a list")
    return tuple(_rat(x) for x in raw)


def load_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return data


def parse_config(given: dict) -> Configuration:
    if not isinstance(given, dict) or "points" not in given:
        raise InputError('configuration needs a "points" list')
    pts = given["points"]
    if not isinstance(pts, list) or not pts:
        raise InputError('"points" must be a nonempty list')
    try:
        return Configuration(tuple(_vector(p, "each point") for p in pts))
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid configuration: {exc}") from exc


def parse_kappa_times(given: dict):
    from .soliton import KappaTimes

    if not isinstance(given, dict) or "kappa" not in given or "times" not in given:
        raise InputError('soliton input needs "kappa" and "times"')
    try:
        return KappaTimes(_vector(given["kappa"], '"kappa"'), _vector(given["times"], '"times"'))
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def _heights(args, given, cfg):
    if args.heights:
        raw = load_json(args.heights)
        raw = raw.get("heights") if isinstance(raw, dict) else raw
    else:
        raw = given.get("heights")
    if raw is None:
        return canonical_height(cfg)
    h = _vector(raw, "heights")
    if len(h) != cfg.n:
        raise InputError(f"heights has length {len(h)}, expected {cfg.n}")
    return h


def _k(args, given, low, high):
    k = args.k if args.k is not None else given.get("k")
    if not isinstance(k, int) or isinstance(k, bool):
        raise InputError("level k is required (--k or \"k\" in the config)")
    if not low <= k <= high:
        raise InputError(f"k={k} outside [{low}, {high}]")
    return k


def _limit(cfg_n, args):
    if cfg_n > args.max_n:
        raise ResourceLimit(f"n={cfg_n} exceeds --max-n {args.max_n}")


# -- output ----------------------------------------------------------------------------

def _vec(v):
    return [rat_str(x) for x in v]


def _set(S):
    return sorted(S)


def _label(S):
    items = sorted(S)
    return "".join(map(str, items)) if all(i < 10 for i in items) else ",".join(map(str, items))


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


class Output:
    """Collects stdout text and files for --out."""

    def __init__(self, args):
        self.args = args
        self.out = Path(args.out) if args.out else None
        if self.out:
            self.out.mkdir(parents=True, exist_ok=True)

    def file(self, name: str, data):
        if self.out is None:
            return
        path = self.out / name
        if isinstance(data, str):
            data = data.encode()
        path.write_bytes(data)

    def figure(self, name: str, render, obj):
        if self.out is not None:
            render(obj, self.out / name)


def plabic_svg(pt, size: int = 500) -> str:
    xs = [p[0] for p in pt.positions.values()]
    ys = [p[1] for p in pt.positions.values()]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    pad = Fraction(30)
    scale = Fraction(size) / span

    def xy(p):
        return f"{float(pad + (p[0] - x0) * scale):.4f}", f"{float(pad + (y1 - p[1]) * scale):.4f}"

    w = f"{float(2 * pad + (x1 - x0) * scale):.4f}"
    h = f"{float(2 * pad + (y1 - y0) * scale):.4f}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    for tri, color in sorted(pt.triangles, key=lambda t: (sorted(sorted(S) for S in t[0]), t[1])):
        pts = " ".join(",".join(xy(pt.positions[S])) for S in tri)
        fill = "#f4f4f4" if color == "white" else "#555555"
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="black" stroke-width="1"/>')
    for S in sorted(pt.positions, key=sorted):
        x, y = xy(pt.positions[S])
        out.append(f'<text x="{x}" y="{y}" font-size="11" text-anchor="middle">{_label(S)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- commands --------------------------------------------------------------------------

def cmd_tile(args, given, out: Output) -> int:
    cfg = parse_config(given)
    h = _heights(args, given, cfg)
    T = tiling_from_heights(cfg, h)
    doc = {
        "n": cfg.n,
        "d": cfg.d,
        "heights": _vec(h),
        "tiles": [{"basis": list(B), "label": _set(A)} for B, A in sorted(T.tiles.items())],
        "vert": sorted((_set(S) for S in T.vert), key=lambda s: (len(s), s)),
    }
    out.file("tiling.json", _dump(doc))
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    else:
        print(f"tiles: {len(T.tiles)}")
        print(f"vertices: {len(T.vert)}")
        for k in range(0, cfg.n - cfg.d + 1):
            print(f"phi_{k}: {' '.join(_vec(phi(T, k)))}")
    return EXIT_OK


def cmd_hsp(args, given, out: Output) -> int:
    cfg = parse_config(given)
    _limit(cfg.n, args)
    k = _k(args, given, 1, cfg.n - cfg.d)
    atlas = enumerate_regular(cfg, max_chambers=args.max_chambers)
    sk = hsp_skeleton(atlas, k)
    doc = {
        "k": k,
        "vertices": [_vec(v) for v in sk.vertices],
        "edges": sorted([a, b] for a, b in sk.edges),
        "dimension": sk.dimension,
        "diameter": sk.diameter(),
    }
    out.file(f"hsp_k{k}.json", _dump(doc))
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    else:
        print(f"vertices: {len(sk.vertices)}")
        print(f"edges: {len(sk.edges)}")
        print(f"dimension: {sk.dimension}")
        print(f"diameter: {doc['diameter']}")
    return EXIT_OK


def cmd_enumerate(args, given, out: Output) -> int:
    cfg = parse_config(given)
    _limit(cfg.n, args)
    atlas = enumerate_regular(cfg, max_chambers=args.max_chambers)
    classes = {k: max(k_classes(atlas, k)) + 1 for k in range(1, cfg.n - cfg.d + 1)}
    doc = {
        "chambers": len(atlas),
        "flips": len(atlas.edges),
        "classes": {str(k): v for k, v in classes.items()},
    }
    out.file("atlas.json", _dump(doc))
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    else:
        print(f"chambers: {len(atlas)}")
        print(f"flips: {len(atlas.edges)}")
        for k, v in classes.items():
            print(f"k={k}: {v}")
    return EXIT_OK


def cmd_plabic(args, given, out: Output) -> int:
    from .plabic import _require_polygon, check_plabic, contract, dual_plabic, section, strands

    cfg = parse_config(given)
    try:
        _require_polygon(cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    h = _heights(args, given, cfg)
    k = _k(args, given, 1, cfg.n - 1)
    T = tiling_from_heights(cfg, h)
    pt = section(T, k)
    G = dual_plabic(pt, cfg)
    check_plabic(G)
    rep = strands(G)
    bip = contract(G, "bipartite")
    doc = {
        "k": k,
        "n": cfg.n,
        "heights": _vec(h),
        "faces": sorted(_set(S) for S in G.faces),
        "trip": {str(i): j for i, j in sorted(rep.trip.items())},
        "vertices": [{"color": col, "faces": [_set(S) for S in cyc]} for cyc, col in G.cells],
        "bipartite": [{"color": col, "faces": [_set(S) for S in cyc]} for cyc, col in bip.cells],
    }
    svg = plabic_svg(pt)
    out.file(f"plabic_k{k}.json", _dump(doc))
    out.file(f"plabic_tiling_k{k}.svg", svg)
    if out.out is not None:
        from .plotting import plot_plabic_tiling

        out.figure(f"plabic_tiling_k{k}.png", plot_plabic_tiling, pt)
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    elif args.format == "svg":
        sys.stdout.write(svg)
    else:
        print(f"faces: {len(G.faces)}")
        print(f"trip: {' '.join(f'{i}->{j}' for i, j in sorted(rep.trip.items()))}")
        print(f"interior vertices: {len(G.cells)} trivalent, {len(bip.cells)} bipartite")
        print(f"labels: {' '.join(_label(S) for S in sorted(G.faces, key=sorted))}")
    return EXIT_OK


def cmd_soliton(args, given, out: Output) -> int:
    from .soliton import contour, emit

    kt = parse_kappa_times(given)
    k = _k(args, given, 1, kt.n - 1)
    box = None
    if given.get("box") is not None:
        raw = given["box"]
        if not (isinstance(raw, list) and len(raw) == 2):
            raise InputError('"box" must be [[x0, y0], [x1, y1]]')
        box = tuple(_vector(p, "box corner") for p in raw)
    try:
        plot = contour(kt, k, box)
    except NonGenericHeight:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    js, svg = emit(plot, "json"), emit(plot, "svg")
    out.file(f"contour_k{k}.json", js)
    out.file(f"contour_k{k}.svg", svg)
    if out.out is not None:
        from .plotting import plot_contour

        out.figure(f"contour_k{k}.png", plot_contour, plot)
    if args.format == "json":
        sys.stdout.write(js.decode())
    elif args.format == "svg":
        sys.stdout.write(svg.decode())
    else:
        print(f"regions: {len(plot.regions)}")
        print(f"segments: {len(plot.segments)}")
        whites = sum(1 for _, c, _ in plot.vertices if c == "white")
        print(f"vertices: {len(plot.vertices)} ({whites} white, {len(plot.vertices) - whites} black)")
        print(f"labels: {' '.join(_label(lab) for lab, _ in plot.regions)}")
    return EXIT_OK


def cmd_verify(args, given, out: Output) -> int:
    from .checks import Check, atlas_checks

    cfg = parse_config(given)
    _limit(cfg.n, args)
    m = cfg.n - cfg.d
    lines = [f"n: {cfg.n}", f"d: {cfg.d}"]
    lines.append("gamma: " + " ".join(rat_str(cfg.gamma(k)) for k in range(0, m + 1)))
    for k in range(0, m + 1):
        lines.append(f"delta({k}): {' '.join(_vec(cfg.delta(k)))}")
    h = _heights(args, given, cfg)
    T = tiling_from_heights(cfg, h)
    for k in range(1, m + 1):
        lines.append(f"phi_{k}: {' '.join(_vec(phi(T, k)))}")
        lines.append(f"phi_{k}(op): {' '.join(_vec(phi(T.opposite(), k)))}")
    rows = [Check(f"tiling {name}", ok, "" if bad is None else f"k={bad}")
            for name, (ok, bad) in verify_vertex_identities(T).items()]
    atlas = enumerate_regular(cfg, max_chambers=args.max_chambers)
    lines.append(f"chambers: {len(atlas)}")
    rows += atlas_checks(atlas, seed=args.seed)
    lines += [r.line() for r in rows]
    text = "\n".join(lines) + "\n"
    out.file("verify.txt", text)
    if args.format == "json":
        sys.stdout.write(_dump({"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in rows],
                                "chambers": len(atlas)}))
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r.ok for r in rows) else EXIT_VERIFY


COMMANDS = {
    "tile": cmd_tile,
    "hsp": cmd_hsp,
    "enumerate": cmd_enumerate,
    "plabic": cmd_plabic,
    "soliton": cmd_soliton,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zonotile", description="Exact zonotopal tilings, higher secondary polytopes, plabic graphs and soliton contour plots.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="JSON input file")
    p.add_argument("--k", type=int, help="level")
    p.add_argument("--heights", help="JSON file with a height vector")
    p.add_argument("--out", help="directory for artifacts (JSON, SVG, PNG)")
    p.add_argument("--format", choices=["text", "json", "svg"], default="text", help="stdout format")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--max-n", type=int, default=8, dest="max_n", help="refuse atlas work above this n")
    p.add_argument("--max-chambers", type=int, default=None, dest="max_chambers", help="abort atlas search beyond this size")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        given = load_json(args.config)
        if args.format == "svg" and args.command not in ("plabic", "soliton"):
            raise InputError(f"--format svg is not available for {args.command}")
        return COMMANDS[args.command](args, given, Output(args))
    except (InputError, NonGenericHeight) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
