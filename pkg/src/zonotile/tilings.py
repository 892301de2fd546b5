"""Fine zonotopal tilings stored as a map from bases B to label sets A.

A tile is the labeled parallelepiped with vertex labels A + S for S a subset of B.
Circuit orientations are tuples of +1/-1 indexed like ``cfg.circuits``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .geometry import Configuration, SignedSet, as_rat, dot


class NonGenericHeight(ValueError):
    def __init__(self, circuit: SignedSet):
        super().__init__(f"non-generic height: <h, alpha(C)> = 0 for circuit C = {circuit!r}")
        self.circuit = circuit


class InvalidTiling(ValueError):
    pass


class FlipError(ValueError):
    pass


# -- heights -------------------------------------------------------------------------

def pairings(cfg: Configuration, h: Sequence) -> tuple:
    """<h, alpha(C)> for every circuit, in ``cfg.circuits`` order."""
    h = tuple(as_rat(x) for x in h)
    if len(h) != cfg.n:
        raise ValueError(f"height vector has length {len(h)}, expected {cfg.n}")
    return tuple(dot(h, a) for a in cfg._alpha_totals)


def is_generic(cfg: Configuration, h: Sequence) -> bool:
    return all(p != 0 for p in pairings(cfg, h))


def sigma_from_heights(cfg: Configuration, h: Sequence) -> tuple:
    out = []
    for C, p in zip(cfg.circuits, pairings(cfg, h)):
        if p == 0:
            raise NonGenericHeight(C)
        out.append(1 if p > 0 else -1)
    return tuple(out)


def canonical_height(cfg: Configuration) -> tuple:
    """h_i = M^(n-i), doubling M from 2 until h is generic."""
    M = 2
    while True:
        h = tuple(Fraction(M ** (cfg.n - i)) for i in cfg.ground)
        if is_generic(cfg, h):
            return h
        M *= 2


# -- tilings -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Tiling:
    cfg: Configuration
    tiles: Mapping  # sorted basis tuple -> frozenset A
    known_sigma: tuple | None = field(default=None, repr=False)

    @property
    def key(self) -> frozenset:
        return frozenset(self.tiles.items())

    def __eq__(self, other):
        return isinstance(other, Tiling) and self.cfg == other.cfg and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __iter__(self):
        return iter(sorted(self.tiles.items()))

    @property
    def sigma(self) -> tuple:
        return self.known_sigma if self.known_sigma is not None else sigma_from_tiling(self)

    @property
    def vert(self) -> frozenset:
        return vert(self)

    def opposite(self) -> "Tiling":
        return opposite(self)


def tiling_from_sigma(cfg: Configuration, sigma: Sequence[int]) -> Tiling:
    """Tiles from a circuit orientation: A collects the externally semi-active j of B."""
    sigma = tuple(sigma)
    if len(sigma) != len(cfg.circuits):
        raise ValueError("orientation length does not match the circuit count")
    table = cfg.fundamental
    tiles = {}
    for B in cfg.bases:
        A = frozenset(
            j for j in cfg.ground
            if j not in B and table[B, j][1] * sigma[table[B, j][0]] == 1
        )
        tiles[B] = A
    return Tiling(cfg, tiles, sigma)


def tiling_from_heights(cfg: Configuration, h: Sequence) -> Tiling:
    return tiling_from_sigma(cfg, sigma_from_heights(cfg, h))


def canonical_tiling(cfg: Configuration) -> Tiling:
    return tiling_from_heights(cfg, canonical_height(cfg))


def vert(T: Tiling) -> frozenset:
    out = set()
    for B, A in T.tiles.items():
        subsets = [frozenset()]
        for b in B:
            subsets += [s | {b} for s in subsets]
        out.update(A | s for s in subsets)
    return frozenset(out)


def sigma_from_tiling(T: Tiling) -> tuple:
    """Orientation of every circuit by the vertex labels; raises InvalidTiling if ambiguous."""
    V = vert(T)
    out = []
    for C in T.cfg.circuits:
        supp = C.support
        seen = {I & supp for I in V}
        pos, neg = C.plus in seen, C.minus in seen
        if pos == neg:
            how = "both ways" if pos else "neither way"
            raise InvalidTiling(f"vertex labels orient circuit {C!r} {how}")
        out.append(1 if pos else -1)
    return tuple(out)


def validate(T: Tiling) -> None:
    """Check the bijection with bases and the one-way orientation of every circuit."""
    cfg = T.cfg
    if set(T.tiles) != set(cfg.bases):
        raise InvalidTiling("tiles are not indexed by exactly the bases")
    for B, A in T.tiles.items():
        if A & set(B) or not A <= set(cfg.ground):
            raise InvalidTiling(f"bad label set {sorted(A)} for basis {B}")
    sigma = sigma_from_tiling(T)
    if tiling_from_sigma(cfg, sigma).key != T.key:
        raise InvalidTiling("tiles disagree with the orientation of their vertex labels")


def opposite(T: Tiling) -> Tiling:
    full = frozenset(T.cfg.ground)
    sigma = None if T.known_sigma is None else tuple(-s for s in T.known_sigma)
    return Tiling(T.cfg, {B: full - A - set(B) for B, A in T.tiles.items()}, sigma)


# -- flips ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlipRecord:
    circuit: SignedSet  # canonical circuit
    sign: int  # orientation sign * circuit has sigma = +1 before the flip
    parts: tuple  # (J, A(F,J), level)

    @property
    def oriented(self) -> SignedSet:
        return self.circuit if self.sign == 1 else -self.circuit

    @property
    def levels(self) -> frozenset:
        return frozenset(level for _, _, level in self.parts)


def flip_data(T: Tiling, C: SignedSet) -> FlipRecord:
    """Check that the tiles of a flip along C are present and record A(F,J) and levels."""
    cfg = T.cfg
    idx, _ = cfg.canonical_circuit(C)
    C = cfg.circuits[idx]
    s = T.sigma[idx]
    oriented = C if s == 1 else -C
    supp = C.support
    parts = []
    for J in cfg.contraction_bases(C):
        rests = set()
        for j in sorted(supp):
            B = tuple(sorted((supp - {j}) | J))
            A = T.tiles[B]
            if (j in A) != (j in oriented.plus):
                raise FlipError(f"no flip along {C!r}: tile at basis {B} has label {sorted(A)}")
            rests.add(A - {j})
        if len(rests) != 1:
            raise FlipError(f"no flip along {C!r}: label sets disagree for J={sorted(J)}")
        (rest,) = rests
        parts.append((J, rest, len(rest) + 1))
    return FlipRecord(C, s, tuple(parts))


def apply_flip(T: Tiling, C: SignedSet, record: FlipRecord | None = None) -> Tiling:
    rec = record or flip_data(T, C)
    oriented = rec.oriented
    tiles = dict(T.tiles)
    for J, _, _ in rec.parts:
        for j in oriented.support:
            B = tuple(sorted((oriented.support - {j}) | J))
            tiles[B] = tiles[B] - {j} if j in oriented.plus else tiles[B] | {j}
    sigma = None
    if T.known_sigma is not None:
        idx = T.cfg.circuit_index[rec.circuit]
        sigma = T.known_sigma[:idx] + (-T.known_sigma[idx],) + T.known_sigma[idx + 1:]
    return Tiling(T.cfg, tiles, sigma)


def combinatorial_flips(T: Tiling) -> list:
    """All flips whose tiles are present in T, as FlipRecords."""
    out = []
    for C in T.cfg.circuits:
        try:
            out.append(flip_data(T, C))
        except FlipError:
            pass
    return out


def available_wall_flips(cfg: Configuration, sigma: Sequence[int]) -> set:
    """Circuits whose sign can be negated while staying realizable by some height."""
    from .lp import feasible

    sigma = tuple(sigma)
    vecs = cfg._reduced_alphas
    out = set()
    for idx, C in enumerate(cfg.circuits):
        system = [(v, -s if i == idx else s) for i, (v, s) in enumerate(zip(vecs, sigma))]
        if feasible(system, len(cfg.free_coordinates))[0]:
            out.add(C)
    return out
