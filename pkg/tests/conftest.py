"""Independent oracles shared by the test modules.

None of these touch the DP, the numba kernel or the LP code: they enumerate
directly or use the textbook coin-change recurrence.
"""

from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def brute_count(a, b: int) -> int:
    """Representations of b by a, by recursion over the leading coordinate."""
    a = tuple(a)

    def rec(i: int, r: int) -> int:
        if i == len(a) - 1:
            return 1 if r % a[i] == 0 else 0
        return sum(rec(i + 1, r - x * a[i]) for x in range(r // a[i] + 1))

    if b < 0:
        return 0
    return rec(0, b)


def coin_table(a, n_max: int) -> list[int]:
    """Coefficients of prod 1/(1 - x^a_i) up to x^n_max."""
    c = [1] + [0] * n_max
    for ai in a:
        for b in range(ai, n_max + 1):
            c[b] += c[b - ai]
    return c


def oracle_frobenius(a, k: int) -> int:
    """F_k from a full coin-change table out to a generous ceiling."""
    limit = k * math.factorial(len(a) - 1) * math.prod(a) + 2 * max(a)
    c = coin_table(a, limit)
    below = [b for b in range(limit + 1) if c[b] < k]
    return below[-1] if below else -1


def oracle_g_exact(a, k: int) -> int:
    """Largest b >= 1 with exactly k representations, 0 if none."""
    limit = (k + 1) * math.factorial(len(a) - 1) * math.prod(a) + 2 * max(a)
    c = coin_table(a, limit)
    hits = [b for b in range(1, limit + 1) if c[b] == k]
    return hits[-1] if hits else 0


def brute_vpc(A, b) -> int:
    """Solutions x >= 0 of Ax = b when some row or the row sum is strictly positive."""
    rows = [list(r) for r in A]
    cands = [(r, bi) for r, bi in zip(rows, b)] + [([sum(c) for c in zip(*rows)], sum(b))]
    pos, t = next((r, bi) for r, bi in cands if all(v > 0 for v in r))
    if t < 0:
        return 0
    n = len(pos)
    ranges = [range(t // pos[j] + 1) for j in range(n)]
    total = 0
    for x in itertools.product(*ranges):
        if all(sum(r[j] * x[j] for j in range(n)) == bj for r, bj in zip(rows, b)):
            total += 1
    return total


@pytest.fixture
def oracles():
    return {
        "count": brute_count,
        "table": coin_table,
        "F": oracle_frobenius,
        "g": oracle_g_exact,
        "vpc": brute_vpc,
    }


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
