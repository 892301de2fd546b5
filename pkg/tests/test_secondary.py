import random
from fractions import Fraction
from itertools import combinations

import pytest

from zonotile.geometry import Configuration
from zonotile.lp import feasible
from zonotile.secondary import (
    ResourceLimit,
    enumerate_regular,
    hsp_skeleton,
    phi,
    realizing_height,
    vert_fib,
    vert_fib_k,
    vert_gkz,
    verify_vertex_identities,
)
from zonotile.tilings import is_generic, sigma_from_heights, tiling_from_heights

from _support import HEXAGON, INTERVAL4, REPEATED5, atlas, random_config, random_height

F = Fraction
EX_T = (0, 0, -3, -5)  # a height realizing the worked n=4 tiling


def test_worked_example_vertex_vectors():
    T = tiling_from_heights(INTERVAL4, EX_T)
    assert vert_fib(T) == tuple(F(x, 10) for x in (3, 8, 5, 4))
    assert vert_fib_k(T, 1) == tuple(F(x, 6) for x in (1, 3, 0, 2))
    assert vert_fib_k(T, 2) == tuple(F(x, 8) for x in (2, 7, 4, 3))
    assert vert_fib_k(T, 3) == tuple(F(x, 2) for x in (1, 2, 2, 1))
    report = verify_vertex_identities(T)
    assert set(report) == {"fib", "fib_k", "gkz", "duality"}
    assert all(ok for ok, _ in report.values())


def test_duality_at_level_one():
    T = tiling_from_heights(INTERVAL4, EX_T)
    total = tuple(a + b for a, b in zip(phi(T, 1), phi(T.opposite(), 2)))
    assert total == (2, 3, 3, 2)
    assert total == tuple(3 - x for x in INTERVAL4.delta(0))


def test_phi_vanishes_outside_levels():
    T = tiling_from_heights(INTERVAL4, EX_T)
    assert phi(T, 0) == (0,) * 4 and phi(T, 3) == (0,) * 4


def test_d2_fib_k_specialization():
    rng = random.Random(2)
    cfg = Configuration.on_line([0, 2, 3, 7, 8])
    for _ in range(10):
        h = random_height(rng, cfg.n)
        if not is_generic(cfg, h):
            continue
        T = tiling_from_heights(cfg, h)
        for k in range(1, cfg.n):
            rhs = tuple((a + b + c) / (2 * cfg.beta(k))
                        for a, b, c in zip(phi(T, k), phi(T, k - 1), cfg.delta(k - 1)))
            assert vert_fib_k(T, k) == rhs


def test_gkz_is_secondary_vertex():
    # vertex of the secondary polytope: sum of triangle volumes at each point
    T = tiling_from_heights(HEXAGON, (5, 0, 3, 1, 4, 2))
    acc = [F(0)] * 6
    for B, A in T.tiles.items():
        if not A:
            for i in B:
                acc[i - 1] += HEXAGON.vol(B) / 2
    assert vert_gkz(T) == tuple(acc)


def test_fib_k_rejects_bad_level_and_d1():
    T = tiling_from_heights(INTERVAL4, EX_T)
    with pytest.raises(ValueError):
        vert_fib_k(T, 0)
    T1 = tiling_from_heights(Configuration.trivial(3), (3, 2, 1))
    with pytest.raises(ValueError):
        vert_fib_k(T1, 1)


def test_interval_atlas_matches_sampling():
    # oracle: dedup tilings over many random integer heights
    rng = random.Random(11)
    seen = set()
    for _ in range(20000):
        h = tuple(rng.randint(-30, 30) for _ in range(4))
        if is_generic(INTERVAL4, h):
            seen.add(sigma_from_heights(INTERVAL4, h))
    at = enumerate_regular(INTERVAL4)
    assert len(at) == 8 == len(seen)
    assert set(at.index) == seen


def test_prefilter_does_not_change_the_atlas():
    for cfg in (INTERVAL4, REPEATED5, HEXAGON):
        a = enumerate_regular(cfg)
        b = enumerate_regular(cfg, prefilter=False)
        assert set(a.index) == set(b.index)
        assert {frozenset((x.a, x.b)) for x in a.edges} == {
            frozenset((a.index[b.chambers[x.a].sigma], a.index[b.chambers[x.b].sigma])) for x in b.edges}


def test_atlas_invariants():
    at = atlas(HEXAGON)
    assert len(at) == 140
    for ch in at.chambers:
        assert feasible([(v, s) for v, s in zip(HEXAGON._reduced_alphas, ch.sigma)])[0]
        assert sigma_from_heights(HEXAGON, ch.height) == ch.sigma
    adj = at.adjacency
    for i, nbrs in enumerate(adj):
        for j, _ in nbrs:
            assert any(k == i for k, _ in adj[j])


def test_square_has_two_tilings():
    cfg = Configuration(((0, 0), (1, 0), (1, 1), (0, 1)))
    assert len(enumerate_regular(cfg)) == 2


def test_max_chambers_limit():
    with pytest.raises(ResourceLimit):
        enumerate_regular(HEXAGON, max_chambers=10)


def test_infeasible_orientation_has_no_height():
    at = atlas(HEXAGON)
    realizable = set(at.index)
    flipped = [s[:i] + (-s[i],) + s[i + 1:] for s in list(realizable)[:5] for i in range(len(s))]
    bad = [s for s in flipped if s not in realizable]
    assert bad and all(realizing_height(HEXAGON, s) is None for s in bad)


def test_hexagon_skeletons():
    at = atlas(HEXAGON)
    counts = [len(hsp_skeleton(at, k).vertices) for k in (1, 2, 3)]
    assert counts == [14, 32, 14]
    sk = hsp_skeleton(at, 2)
    assert sk.dimension == 3 and sk.diameter() == 6
    with pytest.raises(ValueError):
        hsp_skeleton(at, 4)


def test_d1_skeleton_is_hypersimplex():
    cfg = Configuration.trivial(5)
    at = enumerate_regular(cfg)
    assert len(at) == 120
    for k in range(1, 5):
        verts = set(hsp_skeleton(at, k).vertices)
        assert verts == {cfg.unit(S) for S in combinations(cfg.ground, k)}


@pytest.mark.parametrize("seed", range(3))
def test_support_function_and_skeleton_duality(seed):
    rng = random.Random(seed)
    cfg = random_config(rng, 6, 3)
    at = enumerate_regular(cfg)
    m = cfg.n - cfg.d
    sks = {k: hsp_skeleton(at, k) for k in range(1, m + 1)}
    for k, sk in sks.items():
        assert sk.dimension == m
        other = sks[m - k + 1]
        g, dl = cfg.gamma(k - 1), cfg.delta(k - 1)
        assert sorted(sk.vertices) == sorted(tuple(g - a - b for a, b in zip(v, dl)) for v in other.vertices)
    for _ in range(30):
        h = random_height(rng, cfg.n)
        if not is_generic(cfg, h):
            continue
        T = tiling_from_heights(cfg, h)
        for k, sk in sks.items():
            scores = [sum(a * b for a, b in zip(h, v)) for v in sk.vertices]
            best = max(scores)
            assert scores.count(best) == 1
            assert sk.vertices[scores.index(best)] == phi(T, k)


def test_edge_directions_follow_alpha():
    at = atlas(HEXAGON)
    for e in at.edges:
        alpha = HEXAGON.alpha_total(e.flip.circuit)
        for k in range(1, 4):
            diff = [a - b for a, b in zip(phi(at.chambers[e.b].tiling, k), phi(at.chambers[e.a].tiling, k))]
            if k in e.flip.levels:
                nz = next(i for i, x in enumerate(alpha) if x)
                ratio = diff[nz] / alpha[nz]
                assert ratio != 0 and all(x == ratio * y for x, y in zip(diff, alpha))
            else:
                assert not any(diff)
