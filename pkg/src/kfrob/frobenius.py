"""k-Frobenius numbers F_k(a) and exactly-k numbers g_k(a) for knapsacks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _kernel
from .denumerant import KnapsackInstance, check_allocation
from .errors import CeilingExceededError, InvalidInstanceError

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class ScanResult:
    """Raw outcome of one saturated scan with counts capped at ``cap``."""

    instance: KnapsackInstance
    cap: int
    last_eq: tuple[int, ...]  # last_eq[v]: largest b >= 1 with exactly v representations, or -1
    last_lt: int  # largest b >= 0 with fewer than cap representations, or -1
    max_rhs_scanned: int


@dataclass(frozen=True)
class FrobeniusResult:
    instance: KnapsackInstance
    k: int
    f_k: int
    max_rhs_scanned: int
    g_values: dict[int, int] | None = field(default=None)


@dataclass(frozen=True)
class ExactKResult:
    """g_k(a) with the ambiguous sentinel 0 disambiguated by ``exists``."""

    a: tuple[int, ...]
    k: int
    g_k: int
    exists: bool
    max_rhs_scanned: int


def validate_knapsack(a) -> KnapsackInstance:
    inst = a if isinstance(a, KnapsackInstance) else KnapsackInstance.from_coeffs(a)
    if not inst.primitive:
        raise InvalidInstanceError(f"gcd ≠ 1 for a={tuple(inst.a)}")
    return inst


def safety_ceiling(a: Sequence[int], k: int) -> int:
    """k (n-1)! a_1...a_n, clipped to the int64 range of the kernel."""
    return min(k * math.factorial(len(a) - 1) * math.prod(a), INT64_MAX - 1)


def scan(inst: KnapsackInstance, cap: int) -> ScanResult:
    """Run the DP until a_1 consecutive right-hand sides reach ``cap``.

    By the T_1(b) = count(b - a_1) shift argument no b past that run can fall
    below ``cap`` again, so every statistic collected is final.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if inst.n == 1 and cap > 1:
        # a = (1): every b has exactly one representation forever
        raise InvalidInstanceError("a single coefficient never reaches 2 representations")
    if cap * inst.n >= _kernel.INT64_SAFE:
        raise InvalidInstanceError("k too large for the int64 counting kernel")
    check_allocation((inst.a[-1] + 1) * (inst.n + 1) * 8 + cap * 8, "DP window")
    ceiling = safety_ceiling(inst.a, cap)
    last_eq, last_lt, b_end, exceeded = _kernel.scan_saturated(
        np.asarray(inst.a, dtype=np.int64), cap, ceiling
    )
    if exceeded:
        raise CeilingExceededError(f"scan passed the safety ceiling {ceiling} for a={inst.a}")
    return ScanResult(inst, cap, tuple(int(v) for v in last_eq), int(last_lt), int(b_end))


def k_frobenius(a, k: int, with_g_values: bool = False) -> FrobeniusResult:
    """Largest b with fewer than k representations; -1 when there is none."""
    if k < 1:
        raise InvalidInstanceError("k must be >= 1")
    inst = validate_knapsack(a)
    res = scan(inst, k)
    g_values = None
    if with_g_values:
        g_values = {j: max(res.last_eq[j], 0) for j in range(k)}
    return FrobeniusResult(inst, k, res.last_lt, res.max_rhs_scanned, g_values)


def g_exact(a, k: int) -> ExactKResult:
    """Largest positive b with exactly k representations (0 and exists=False if none)."""
    if k < 0:
        raise InvalidInstanceError("k must be >= 0")
    inst = validate_knapsack(a)
    return _g_exact(inst, k)


def _g_exact(inst: KnapsackInstance, k: int) -> ExactKResult:
    if inst.n == 1:
        # a = (1): every b >= 1 has exactly one representation, so no largest one for k=1
        if k == 1:
            raise InvalidInstanceError("g_1 is unbounded for a single coefficient")
        return ExactKResult(inst.a, k, 0, False, 0)
    res = scan(inst, k + 1)
    b = res.last_eq[k]
    return ExactKResult(inst.a, k, max(b, 0), b >= 1, res.max_rhs_scanned)


def two_var_closed_form(a1: int, a2: int, k: int) -> int:
    """k a1 a2 - a1 - a2, the k-Frobenius number of a coprime pair."""
    if a1 < 1 or a2 < 1:
        raise InvalidInstanceError("coefficients must be positive")
    if math.gcd(a1, a2) != 1:
        raise InvalidInstanceError(f"gcd({a1}, {a2}) != 1")
    if k < 1:
        raise InvalidInstanceError("k must be >= 1")
    return k * a1 * a2 - a1 - a2


def gcd_reduce_g(a1: int, a2: int, a3: int, j: int) -> int:
    """g_j(a1, a2, a3) computed on (a1, a2/d, a3/d) with d = gcd(a2, a3).

    Uses g_j(a) = d g_j(a1, a2/d, a3/d) + (d - 1) a1, or 0 when the reduced
    instance has no right-hand side with exactly j representations. On the
    reduced side b = -1 (j = 0) and b = 0 (j = 1) count as witnesses; the map
    is only a bijection on that extended range.
    """
    if min(a1, a2, a3) < 1:
        raise InvalidInstanceError("coefficients must be positive")
    if math.gcd(a1, a2, a3) != 1:
        raise InvalidInstanceError(f"gcd({a1}, {a2}, {a3}) != 1")
    d = math.gcd(a2, a3)
    reduced = _g_exact(KnapsackInstance.from_coeffs((a1, a2 // d, a3 // d)), j)
    if reduced.exists:
        base = reduced.g_k
    elif j == 0:
        # every positive b representable: -1 is the largest integer with no representation
        base = -1
    elif j == 1:
        # b = 0 is the largest integer with exactly one (empty) representation
        base = 0
    else:
        return 0
    b = d * base + (d - 1) * a1
    return b if b >= 1 else 0


@dataclass
class G0G1Report:
    bound: int
    triples_checked: int = 0
    violations: list[tuple[int, int, int, int, int]] = field(default_factory=list)


def _g0_g1(triple: tuple[int, int, int]) -> tuple[int, int]:
    res = scan(KnapsackInstance.from_coeffs(triple), 2)
    return max(res.last_eq[0], 0), max(res.last_eq[1], 0)


def verify_g0_lt_g1(bound: int, workers: int = 1) -> G0G1Report:
    """Check g_0 < g_1 over every coprime a1 < a2 < a3 <= bound."""
    if bound < 3:
        raise InvalidInstanceError("bound must be >= 3")
    triples = [t for t in combinations(range(1, bound + 1), 3) if math.gcd(*t) == 1]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            values = list(pool.map(_g0_g1, triples, chunksize=256))
    else:
        values = [_g0_g1(t) for t in triples]
    report = G0G1Report(bound, len(triples))
    for t, (g0, g1) in zip(triples, values):
        if not g0 < g1:
            report.violations.append((*t, g0, g1))
    report.violations.sort()
    return report


def frobenius_numbers(a, ks: Sequence[int]) -> dict[int, int]:
    """F_k(a) for several k from one scan saturated at max(ks)."""
    if not ks or min(ks) < 1:
        raise InvalidInstanceError("every k must be >= 1")
    inst = validate_knapsack(a)
    res = scan(inst, max(ks))
    out = {}
    for k in ks:
        # b = 0 has one representation, so it is below k whenever k >= 2
        best = max(res.last_eq[:k], default=-1)
        out[k] = max(best, 0) if k >= 2 else best
    return out
