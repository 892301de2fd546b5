from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from zonotile.lp import feasible, strict_witness


def _check(system, y):
    return all(s * sum(Fraction(a) * b for a, b in zip(v, y)) > 0 for v, s in system)


def test_single_halfspace_is_feasible():
    ok, y = feasible([((1, -2, 3), 1)])
    assert ok and _check([((1, -2, 3), 1)], y)


def test_opposite_pair_is_infeasible():
    ok, y = feasible([((1, 2), 1), ((1, 2), -1)])
    assert not ok and y is None


def test_positive_combination_blocks_strict_system():
    # e1 + e2 - (e1 + e2) = 0 with all coefficients positive
    system = [((1, 0), 1), ((0, 1), 1), ((1, 1), -1)]
    assert not feasible(system)[0]


def test_empty_system_has_zero_witness():
    assert strict_witness([], 3) == (0, 0, 0)


def test_witness_is_normalized_integral():
    y = strict_witness([(Fraction(1, 2), Fraction(1, 3)), (1, -1)])
    assert all(Fraction(x).denominator == 1 for x in y)
    assert min(Fraction(1, 2) * y[0] + Fraction(1, 3) * y[1], y[0] - y[1]) > 0


def _brute_force(system, dim, box=4):
    """Search integer points for a strict solution (sufficient, not necessary)."""
    for y in product(range(-box, box + 1), repeat=dim):
        if _check(system, y):
            return True
    return False


vectors = st.lists(st.integers(-3, 3), min_size=2, max_size=2)
systems = st.lists(st.tuples(vectors, st.sampled_from([1, -1])), min_size=1, max_size=6)


@settings(max_examples=150, deadline=None)
@given(systems)
def test_oracle_agrees_with_witness_and_search(system):
    ok, y = feasible(system, 2)
    if ok:
        assert _check(system, y)
    else:
        # in two dimensions a strict system with small integer data has a small solution if any
        assert not _brute_force(system, 2, box=20)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=8))
def test_realizable_signs_are_found(rows):
    # signs read off a hidden point are always feasible
    hidden = (3, -1, 2, 5)
    system = [(r, 1 if sum(a * b for a, b in zip(r, hidden)) > 0 else -1)
              for r in rows if sum(a * b for a, b in zip(r, hidden)) != 0]
    if system:
        ok, y = feasible(system, 4)
        assert ok and _check(system, y)
