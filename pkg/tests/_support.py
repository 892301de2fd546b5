"""Shared configurations and random generators for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from zonotile.geometry import Configuration, cyclic_polygon
from zonotile.secondary import enumerate_regular

# the n=4, d=2 worked example: lift columns (2,1), (1,1), (0,1), (-1,1)
INTERVAL4 = Configuration(((2,), (1,), (0,), (-1,)))
# n=5, d=2 with a repeated point (v3 = v4)
REPEATED5 = Configuration(((2,), (1,), (0,), (0,), (-1,)))
FIVEGON = Configuration(((0, 0), (1, 0), (2, 1), (1, 2), (0, 1)))
FIVEGON_H = (1, 0, 3, 0, 0)
# hexagon whose node coordinates appear in the white-labels figure
FIGURE_HEXAGON = Configuration(((4, 1), (3, 3), (1, 3), (0, 2), (0, 0), (2, 0)))
CONCURRENT_HEXAGON = Configuration(((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)))


def _on_circle(angles):
    return cyclic_polygon([Fraction(math.tan(math.radians(a) / 2)).limit_denominator(1000) for a in angles])


HEXAGON = _on_circle([-50, 0, 60, 110, 190, -120])
HEXAGON_ALT = _on_circle([-70, 0, 60, 130, 170, -120])


def generic_polygon(n: int) -> Configuration:
    """A fixed convex n-gon with no three diagonals concurrent."""
    ts = sorted(Fraction(3 * i * i + 2 * i + 1, 17 * n) - 1 for i in range(n))
    return cyclic_polygon(ts)


def random_polygon(rng: random.Random, n: int) -> Configuration:
    ts = sorted(rng.sample(range(-40, 41), n))
    return cyclic_polygon([Fraction(t, 23) for t in ts])


def random_config(rng: random.Random, n: int, d: int) -> Configuration:
    """Random configuration of n points spanning Q^(d-1); repeated points allowed for d = 2."""
    if d == 1:
        return Configuration.trivial(n)
    if d == 2:
        while True:
            vals = [rng.randint(-4, 4) for _ in range(n)]
            if len(set(vals)) >= 2:
                return Configuration.on_line(vals)
    while True:
        pts = tuple((rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(n))
        try:
            return Configuration(pts)
        except ValueError:
            continue


def random_height(rng: random.Random, n: int):
    return tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 5)) for _ in range(n))


@lru_cache(maxsize=None)
def atlas(cfg: Configuration):
    return enumerate_regular(cfg)
