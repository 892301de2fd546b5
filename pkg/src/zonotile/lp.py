"""Exact feasibility of homogeneous strict sign systems.

The question "is there y with s_i * <v_i, y> > 0 for all i" is settled through
its Gordan alternative: no such y exists iff some convex combination of the
vectors s_i * v_i vanishes.  That alternative is a small standard-form LP,
solved here by a Phase-I simplex over ``Fraction`` with Bland's rule, so it
always terminates and never rounds.  When the alternative is infeasible, the
optimal Phase-I dual is a strict witness y.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

__all__ = ["feasible", "strict_witness"]


def _phase_one(columns: list[list[int]], rhs: list[int]):
    """Minimise the sum of artificials for ``columns @ x = rhs, x >= 0`` (integer data).

    Fraction-free pivoting: every stored entry is the true tableau entry times
    the current pivot denominator ``D``, and each update divides exactly.
    Returns (optimal value, dual vector) as Fractions.
    """
    m = len(rhs)
    ncols = len(columns)
    width = ncols + m
    # rows carry the right-hand side in their last slot
    tab = [[col[t] for col in columns] + [int(t == s) for s in range(m)] + [rhs[t]] for t in range(m)]
    basis = [ncols + t for t in range(m)]
    # objective row: reduced costs, then minus the objective value
    obj = [-sum(tab[t][j] for t in range(m)) for j in range(ncols)] + [0] * m + [-sum(rhs)]
    D = 1

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for t in range(m):
            a = tab[t][enter]
            if a > 0:
                if leave is None:
                    leave = t
                    continue
                la = tab[leave][enter]
                lhs, rhs_ = tab[t][-1] * la, tab[leave][-1] * a
                if lhs < rhs_ or (lhs == rhs_ and basis[t] < basis[leave]):
                    leave = t
        if leave is None:  # cannot happen: phase one is bounded below by zero
            raise ArithmeticError("unbounded phase-one problem")
        prow = tab[leave]
        p = prow[enter]
        for t in range(m):
            if t != leave:
                row = tab[t]
                f = row[enter]
                if f:
                    tab[t] = [(x * p - f * y) // D for x, y in zip(row, prow)]
                elif p != D:
                    tab[t] = [x * p // D for x in row]
        f = obj[enter]
        obj = [(x * p - f * y) // D for x, y in zip(obj, prow)]
        D = p
        basis[leave] = enter

    value = Fraction(-obj[-1], D)
    duals = [1 - Fraction(obj[ncols + t], D) for t in range(m)]
    return value, duals


def strict_witness(vectors: Sequence[Sequence], dim: int | None = None):
    """Return y with <v, y> >= 1 for every v, or None if no y makes all positive.

    The witness is scaled to have integer entries when possible.
    """
    vecs = [[Fraction(x) for x in v] for v in vectors]
    if dim is None:
        if not vecs:
            raise ValueError("dimension unknown for an empty system")
        dim = len(vecs[0])
    if not vecs:
        return tuple(Fraction(0) for _ in range(dim))
    columns = []
    for v in vecs:
        den = lcm(*(x.denominator for x in v))
        columns.append([int(x * den) for x in v] + [1])
    rhs = [0] * dim + [1]
    value, duals = _phase_one(columns, rhs)
    if value == 0:
        return None
    y = [-u for u in duals[:dim]]
    values = [sum((a * b for a, b in zip(v, y)), Fraction(0)) for v in vecs]
    low = min(values)
    if low <= 0:  # the dual certificate must be strict; anything else is a bug
        raise ArithmeticError("phase-one dual is not a strict witness")
    y = [x / low for x in y]
    den = lcm(*(x.denominator for x in y))
    scaled = [x * den for x in y]
    return tuple(scaled)


def feasible(system: Sequence[tuple[Sequence, int]], dim: int | None = None):
    """Decide whether some y satisfies sign(<v, y>) = s for every (v, s) in ``system``.

    Returns ``(True, y)`` with an exact witness, or ``(False, None)``.
    """
    if dim is None and system:
        dim = len(system[0][0])
    for _, s in system:
        if s not in (1, -1):
            raise ValueError(f"signs must be +1 or -1, got {s}")
    rows = [[s * Fraction(x) for x in v] for v, s in system]
    y = strict_witness(rows, dim)
    return (y is not None), y
