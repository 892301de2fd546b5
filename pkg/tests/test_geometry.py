import random
from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zonotile.geometry import (
    Configuration,
    as_rat,
    det,
    eulerian,
    eulerian_prob,
    rat_str,
    signed,
)
from zonotile.tilings import is_generic, tiling_from_heights

from _support import FIVEGON, HEXAGON, INTERVAL4, REPEATED5, random_config, random_height


def test_rationals_parse_and_print():
    assert as_rat("3/6") == Fraction(1, 2)
    assert rat_str(Fraction(-4, 6)) == "-2/3"
    assert rat_str(3) == "3/1"
    with pytest.raises(TypeError):
        as_rat(0.5)


def test_interval_volumes_are_index_gaps():
    for i, j in combinations(range(1, 5), 2):
        assert INTERVAL4.vol((i, j)) == j - i


def test_repeated_point_has_zero_volume_and_nine_bases():
    assert REPEATED5.vol((3, 4)) == 0
    # oracle: every pair with nonzero determinant
    pairs = [B for B in combinations(range(1, 6), 2) if det([REPEATED5.v(i) for i in B]) != 0]
    assert len(pairs) == 9
    assert list(REPEATED5.bases) == pairs


def test_d1_volumes_and_bases():
    cfg = Configuration.trivial(5)
    assert cfg.d == 1
    assert all(cfg.vol((i,)) == 1 for i in cfg.ground)
    assert len(cfg.bases) == 5


def test_vol_rejects_wrong_size():
    with pytest.raises(ValueError):
        INTERVAL4.vol((1, 2, 3))


def test_generic_config_has_all_bases():
    assert len(INTERVAL4.bases) == 6


def test_hexagon_circuits_are_alternating_quadruples():
    expected = {signed([a, c], [b, d]) for a, b, c, d in combinations(range(1, 7), 4)}
    assert set(HEXAGON.circuits) == expected


def test_d1_circuits_are_pairs():
    cfg = Configuration.trivial(4)
    assert set(cfg.circuits) == {signed([i], [j]) for i, j in combinations(range(1, 5), 2)}
    C = signed([1], [3])
    assert cfg.contraction_bases(C) == (frozenset(),)


def test_flip_circuit_alpha():
    C = signed([3], [1, 4])
    assert INTERVAL4.alpha_total(C) == (-1, 0, 3, -2)


def test_repeated_point_circuit_and_contraction_bases():
    C = signed([3], [4])
    assert C in REPEATED5.circuits
    assert set(REPEATED5.contraction_bases(C)) == {frozenset({1}), frozenset({2}), frozenset({5})}
    assert REPEATED5.alpha(C, {1}) == (0, 0, 2, -2, 0)
    assert REPEATED5.alpha(C, {2}) == (0, 0, 1, -1, 0)
    assert REPEATED5.alpha(C, {5}) == (0, 0, 1, -1, 0)
    with pytest.raises(ValueError):
        REPEATED5.alpha(C, {3})


def test_fivegon_first_alpha_row():
    assert FIVEGON.alpha_total(signed([1, 3], [2, 4])) == (2, -3, 2, -1, 0)


def test_generic_full_circuit_has_single_contraction_basis():
    for C in HEXAGON.circuits:
        assert HEXAGON.contraction_bases(C) == (frozenset(),)


def test_interval_gamma_and_delta():
    assert [INTERVAL4.gamma(k) for k in range(3)] == [3, 4, 3]
    assert INTERVAL4.delta(0) == (1, 0, 0, 1)
    assert INTERVAL4.delta(1) == (2, 1, 1, 2)
    assert INTERVAL4.delta(2) == (3, 3, 3, 3)
    assert INTERVAL4.gamma(-1) == 0 and INTERVAL4.gamma(3) == 0


def test_d1_gamma_is_one_per_level():
    cfg = Configuration.trivial(6)
    assert [cfg.gamma(k) for k in range(6)] == [1] * 6


def test_d2_gamma_equals_next_beta():
    cfg = Configuration.on_line([0, 1, 3, 4, 7, 9])
    for k in range(0, cfg.n - 1):
        assert cfg.gamma(k) == cfg.beta(k + 1)


def test_eulerian_small_rows():
    assert [eulerian(3, r) for r in range(3)] == [1, 4, 1]
    for d in range(1, 9):
        assert sum(eulerian(d, r) for r in range(d)) == factorial(d)
        assert sum(eulerian_prob(r, d) for r in range(d)) == 1


@pytest.mark.parametrize("d", range(2, 11))
def test_eulerian_recurrence(d):
    for r in range(0, d):
        assert (d - r) * eulerian(d - 1, r - 1) + (r + 1) * eulerian(d - 1, r) == eulerian(d, r)


def test_coloop_detection_and_delta_convention():
    cfg = Configuration(((0, 0), (1, 0), (0, 1)))
    assert all(cfg.is_coloop(i) for i in cfg.ground)
    assert cfg.delta(0) == (1, 1, 1)


configs = st.builds(
    lambda seed, n, d: random_config(random.Random(seed), n, d),
    st.integers(0, 10**6), st.integers(3, 6), st.sampled_from([2, 3]),
).filter(lambda c: c.n >= c.d)


@settings(max_examples=40, deadline=None)
@given(configs)
def test_alpha_is_a_dependence_with_circuit_signs(cfg):
    for C in cfg.circuits:
        for J in cfg.contraction_bases(C):
            a = cfg.alpha(C, J)
            for coord in range(cfg.d):
                assert sum(a[i - 1] * cfg.v(i)[coord] for i in cfg.ground) == 0
            for i in cfg.ground:
                assert (a[i - 1] > 0) == (i in C.plus) and (a[i - 1] < 0) == (i in C.minus)


@settings(max_examples=40, deadline=None)
@given(configs)
def test_alpha_vectors_are_positive_rescalings(cfg):
    for C in cfg.circuits:
        total = cfg.alpha_total(C)
        j = min(C.support)
        for J in cfg.contraction_bases(C):
            a = cfg.alpha(C, J)
            ratio = a[j - 1] / total[j - 1]
            assert ratio > 0
            assert all(x == ratio * y for x, y in zip(a, total))


def _gamma_from(T):
    out = [Fraction(0)] * (T.cfg.n - T.cfg.d + 1)
    for B, A in T.tiles.items():
        out[len(A)] += T.cfg.vol(B)
    return out


@pytest.mark.parametrize("cfg", [INTERVAL4, REPEATED5, FIVEGON, HEXAGON], ids=["interval", "repeated", "fivegon", "hexagon"])
def test_gamma_is_independent_of_the_tiling(cfg):
    rng = random.Random(7)
    seen = 0
    while seen < 20:
        h = random_height(rng, cfg.n)
        if not is_generic(cfg, h):
            continue
        seen += 1
        g = _gamma_from(tiling_from_heights(cfg, h))
        assert g == [cfg.gamma(k) for k in range(cfg.n - cfg.d + 1)]
        beta = [sum((g[k - r] * Fraction(eulerian(cfg.d - 1, r - 1), factorial(cfg.d - 1))
                     for r in range(1, cfg.d) if 0 <= k - r < len(g)), Fraction(0)) for k in range(cfg.n + 1)]
        if cfg.d > 1:
            assert beta == [cfg.beta(k) for k in range(cfg.n + 1)]


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration(((0, 0), (1, 1), (2, 2)))  # collinear points do not span the plane
    with pytest.raises(ValueError):
        Configuration(((0,), (0, 1)))
    with pytest.raises(ValueError):
        Configuration(((0, 0),))
