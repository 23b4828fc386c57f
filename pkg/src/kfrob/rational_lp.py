"""Dense two-phase simplex over exact rationals.

Only meant for the tiny programs that come up here (a handful of rows, at most
a few dozen columns). Bland's rule is used throughout so the method cannot
cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(rows: list[list[Fraction]], basis: list[int], r: int, col: int) -> None:
    prow = rows[r]
    p = prow[col]
    if p != 1:
        rows[r] = prow = [v / p for v in prow]
    for i, row in enumerate(rows):
        if i != r and row[col] != 0:
            f = row[col]
            rows[i] = [v - f * w for v, w in zip(row, prow)]
    basis[r] = col


def _run(rows, basis, cost, allowed: int) -> str:
    """Maximise cost.x over the current tableau. Columns >= allowed never enter."""
    while True:
        enter = -1
        for j in range(allowed):
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * rows[i][j] for i in range(len(rows)))
            if rc > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        best = None
        leave = -1
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            return UNBOUNDED
        _pivot(rows, basis, leave, enter)


def maximize(
    c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence
) -> LPResult:
    """Solve max c.x subject to a_eq x = b_eq, x >= 0 exactly."""
    n = len(c)
    m = len(a_eq)
    rows: list[list[Fraction]] = []
    for row, rhs in zip(a_eq, b_eq):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(0)] * m + [rhs])
    for i in range(m):
        rows[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]

    # phase 1: drive the artificials to zero
    cost1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _run(rows, basis, cost1, n + m)
    if sum(rows[i][-1] for i in range(m) if basis[i] >= n) != 0:
        return LPResult(INFEASIBLE)

    # pivot degenerate artificials out, dropping rows that turn out redundant
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), -1)
            if col < 0:
                del rows[i]
                del basis[i]
                continue
            _pivot(rows, basis, i, col)
        i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    status = _run(rows, basis, cost, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, tuple(x), value)


def feasible_point(a_eq: Sequence[Sequence], b_eq: Sequence) -> tuple[Fraction, ...] | None:
    """Some x >= 0 with a_eq x = b_eq, or None."""
    res = maximize([0] * len(a_eq[0]), a_eq, b_eq)
    return res.x if res.status == OPTIMAL else None
