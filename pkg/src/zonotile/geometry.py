"""Exact point configurations, bases, circuits and the alpha vectors of circuits.

Points and vectors are tuples of ``fractions.Fraction``.  Ground-set elements are
numbered ``1..n`` everywhere in the public API; vectors indexed by the ground set
are plain tuples whose entry ``i - 1`` belongs to element ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

Rat = Fraction
RatVec = tuple  # tuple[Fraction, ...]


def as_rat(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, float):
        raise TypeError(f"floating point value {x!r} is not accepted; use 'p/q'")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- small exact linear algebra -------------------------------------------------

def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    size = len(m)
    result = Fraction(1)
    for c in range(size):
        p = next((r for r in range(c, size) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result *= piv
        for r in range(c + 1, size):
            f = m[r][c]
            if f:
                f /= piv
                row_c = m[c]
                m[r] = [a - f * b for a, b in zip(m[r], row_c)]
    return result


def row_reduce(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    if not vectors:
        return 0
    return len(row_reduce(vectors)[1])


def kernel_vector(columns: Sequence[Sequence[Fraction]]):
    """A nonzero kernel vector of the matrix with the given columns, assuming nullity 1."""
    rows = [list(col) for col in zip(*columns)]
    ncols = len(columns)
    red, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise ValueError("kernel is not one-dimensional")
    f = free[0]
    x = [Fraction(0)] * ncols
    x[f] = Fraction(1)
    for row, c in zip(red, pivots):
        x[c] = -row[f]
    return x


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# -- signed sets ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SignedSet:
    plus: frozenset
    minus: frozenset

    def __post_init__(self):
        if self.plus & self.minus:
            raise ValueError("plus and minus parts must be disjoint")

    @property
    def support(self) -> frozenset:
        return self.plus | self.minus

    def __neg__(self) -> "SignedSet":
        return SignedSet(self.minus, self.plus)

    def sign(self, j: int) -> int:
        return 1 if j in self.plus else -1 if j in self.minus else 0

    def is_canonical(self) -> bool:
        return min(self.support) in self.plus

    def canonical(self) -> "SignedSet":
        return self if self.is_canonical() else -self

    def __repr__(self):
        return f"({sorted(self.plus)}, {sorted(self.minus)})"


Circuit = SignedSet


def signed(plus: Iterable[int], minus: Iterable[int]) -> SignedSet:
    return SignedSet(frozenset(plus), frozenset(minus))


# -- Eulerian numbers -------------------------------------------------------------

@lru_cache(maxsize=None)
def eulerian(d: int, r: int) -> int:
    """Number of permutations of [d] with exactly r descents."""
    if d < 0 or r < 0:
        return 0
    if d == 0:
        return 1 if r == 0 else 0
    if r >= d:
        return 0
    return (d - r) * eulerian(d - 1, r - 1) + (r + 1) * eulerian(d - 1, r)


def eulerian_prob(r: int, d: int) -> Fraction:
    """Probability that a random permutation of [d] has r descents."""
    return Fraction(eulerian(d, r), factorial(d))


# -- configurations ----------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """n points in Q^(d-1) together with their lift v_i = (a_i, 1) in Q^d."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(as_rat(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("empty configuration")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points have inconsistent dimensions")
        if self.n < self.d:
            raise ValueError(f"need n >= d, got n={self.n}, d={self.d}")
        if rank(self.lift) != self.d:
            raise ValueError("points do not affinely span their ambient space")

    @classmethod
    def trivial(cls, n: int) -> "Configuration":
        """n copies of the single point of Q^0 (d = 1)."""
        return cls(tuple(() for _ in range(n)))

    @classmethod
    def on_line(cls, values: Iterable) -> "Configuration":
        return cls(tuple((v,) for v in values))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0]) + 1

    @property
    def ground(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def lift(self) -> tuple:
        return tuple(p + (Fraction(1),) for p in self.points)

    def v(self, i: int) -> tuple:
        return self.lift[i - 1]

    def unit(self, S: Iterable[int] = (), scale=1) -> tuple:
        """Indicator vector of S (scaled)."""
        s = set(S)
        one, zero = Fraction(scale), Fraction(0)
        return tuple(one if i in s else zero for i in self.ground)

    # bases and volumes

    @cached_property
    def _volumes(self) -> dict:
        return {
            B: abs(det([self.v(i) for i in B]))
            for B in combinations(self.ground, self.d)
        }

    def vol(self, B: Iterable[int]) -> Fraction:
        key = tuple(sorted(B))
        if len(key) != self.d or len(set(key)) != self.d:
            raise ValueError(f"vol needs a {self.d}-subset, got {key}")
        return self._volumes[key]

    @cached_property
    def bases(self) -> tuple:
        """Bases as sorted tuples, in lexicographic order."""
        return tuple(B for B, vol in self._volumes.items() if vol > 0)

    @cached_property
    def total_volume(self) -> Fraction:
        """Volume of the zonotope, the sum of vol(B) over all bases."""
        return sum(self._volumes.values(), Fraction(0))

    def is_coloop(self, i: int) -> bool:
        return i in self._coloops

    @cached_property
    def _coloops(self) -> frozenset:
        return frozenset(i for i in self.ground if rank([self.v(j) for j in self.ground if j != i]) < self.d)

    def delete(self, i: int) -> "Configuration":
        return Configuration(tuple(p for j, p in zip(self.ground, self.points) if j != i))

    # circuits

    @cached_property
    def circuits(self) -> tuple:
        """All circuits up to sign, canonically signed, sorted."""
        found = []
        for size in range(2, self.d + 2):
            for S in combinations(self.ground, size):
                cols = [self.v(i) for i in S]
                if rank(cols) != size - 1:
                    continue
                x = kernel_vector(cols)
                if any(c == 0 for c in x):
                    continue  # a proper subset is already dependent
                plus = [i for i, c in zip(S, x) if c > 0]
                minus = [i for i, c in zip(S, x) if c < 0]
                found.append(signed(plus, minus).canonical())
        return tuple(sorted(found, key=lambda C: (len(C.support), sorted(C.support))))

    @cached_property
    def circuit_index(self) -> dict:
        return {C: idx for idx, C in enumerate(self.circuits)}

    def canonical_circuit(self, C: SignedSet):
        """Return (index, s) with C = s * circuits[index]."""
        can = C.canonical()
        if can not in self.circuit_index:
            raise ValueError(f"{C} is not a circuit")
        return self.circuit_index[can], (1 if can == C else -1)

    def contraction_bases(self, C: SignedSet) -> tuple:
        supp = C.support
        rest = [i for i in self.ground if i not in supp]
        size = self.d - len(supp) + 1
        out = []
        for J in combinations(rest, size):
            if all(self._volumes[tuple(sorted((supp - {j}) | set(J)))] > 0 for j in supp):
                out.append(frozenset(J))
        return tuple(out)

    def alpha(self, C: SignedSet, J: Iterable[int]) -> tuple:
        J = frozenset(J)
        supp = C.support
        if J not in self.contraction_bases(C):
            raise ValueError(f"{sorted(J)} is not a contraction basis of {C}")
        return tuple(
            C.sign(j) * self.vol((supp - {j}) | J) if j in supp else Fraction(0)
            for j in self.ground
        )

    def alpha_total(self, C: SignedSet) -> tuple:
        idx, s = self.canonical_circuit(C)
        return tuple(s * x for x in self._alpha_totals[idx])

    @cached_property
    def _alpha_totals(self) -> tuple:
        out = []
        for C in self.circuits:
            acc = [Fraction(0)] * self.n
            for J in self.contraction_bases(C):
                for j, x in zip(self.ground, self.alpha(C, J)):
                    acc[j - 1] += x
            out.append(tuple(acc))
        return tuple(out)

    @cached_property
    def fundamental(self) -> dict:
        """(B, j) -> (circuit index, s) for the circuit inside B+j having j positive.

        The oriented circuit equals s times the canonical circuit.
        """
        table = {}
        for B in self.bases:
            cols = [self.v(b) for b in B]
            for j in self.ground:
                if j in B:
                    continue
                S = tuple(sorted(B + (j,)))
                x = dict(zip(B + (j,), kernel_vector(cols + [self.v(j)])))
                plus = [i for i in S if x[i] * x[j] > 0]
                minus = [i for i in S if x[i] * x[j] < 0]
                table[B, j] = self.canonical_circuit(signed(plus, minus))
        return table

    # reduced coordinates of the space spanned by circuit vectors

    @cached_property
    def free_coordinates(self) -> tuple:
        """Elements outside the lexicographically first basis.

        Every dependence vector is determined by its entries on these elements.
        """
        B0 = set(self.bases[0])
        return tuple(i for i in self.ground if i not in B0)

    def reduce(self, vec: Sequence) -> tuple:
        return tuple(vec[i - 1] for i in self.free_coordinates)

    @cached_property
    def _reduced_alphas(self) -> tuple:
        return tuple(self.reduce(a) for a in self._alpha_totals)

    def expand(self, y: Sequence) -> tuple:
        """Height vector supported on the free coordinates."""
        h = [Fraction(0)] * self.n
        for i, x in zip(self.free_coordinates, y):
            h[i - 1] = Fraction(x)
        return tuple(h)

    # gamma and delta

    def gamma(self, k: int) -> Fraction:
        return self._gammas[k] if 0 <= k < len(self._gammas) else Fraction(0)

    @cached_property
    def _gammas(self) -> tuple:
        from .tilings import canonical_tiling

        T = canonical_tiling(self)
        out = [Fraction(0)] * (self.n - self.d + 1)
        for B, A in T.tiles.items():
            out[len(A)] += self.vol(B)
        return tuple(out)

    def delta(self, k: int) -> tuple:
        if k not in self._delta_cache:
            own = self.gamma(k)
            self._delta_cache[k] = tuple(
                own - (Fraction(0) if self.is_coloop(i) else self._deletions[i].gamma(k)) for i in self.ground)
        return self._delta_cache[k]

    @cached_property
    def _delta_cache(self) -> dict:
        return {}

    @cached_property
    def _deletions(self) -> dict:
        return {i: self.delete(i) for i in self.ground if not self.is_coloop(i)}

    def beta(self, k: int) -> Fraction:
        """(d-1)-volume of the section of the zonotope at height k."""
        d = self.d
        if d == 1:
            return Fraction(1) if 0 <= k <= self.n else Fraction(0)
        return sum(
            (self.gamma(k - r) * Fraction(eulerian(d - 1, r - 1), factorial(d - 1)) for r in range(1, d)),
            Fraction(0),
        )


def cyclic_polygon(ts: Sequence) -> Configuration:
    """Rational points on the unit circle, one per parameter t, via t -> ((1-t^2), 2t)/(1+t^2)."""
    pts = []
    for t in map(as_rat, ts):
        s = 1 + t * t
        pts.append(((1 - t * t) / s, 2 * t / s))
    return Configuration(tuple(pts))
