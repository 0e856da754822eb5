"""Exact feasibility test for ``A x = b, x >= 0`` over the rationals.

Phase one of the simplex method on Fractions with Bland's rule, which cannot
cycle.  Problem sizes here are tiny (a couple of dozen variables), so a dense
tableau is fine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> bool:
    m = len(a)
    if m == 0:
        return True
    n = len(a[0])
    # flip rows so the right-hand side is nonnegative; artificials n..n+m-1
    tab = []
    for row, rhs in zip(a, b):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        tab.append(row + [Fraction(int(i == len(tab))) for i in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, reduced costs row
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot happen for a phase-one objective bounded below by 0
            break
        piv_row = tab[leave]
        p = piv_row[enter]
        piv_row = [v / p for v in piv_row]
        tab[leave] = piv_row
        for i, row in enumerate(tab):
            if i != leave and row[enter] != 0:
                f = row[enter]
                tab[i] = [x - f * y for x, y in zip(row, piv_row)]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, piv_row)]
        basis[leave] = enter
    return cost[width] == 0
