"""Denumerants by the smallest-nonzero-index dynamic program.

T_i(b) counts representations a.x = b whose first nonzero coordinate is i.
Base case T_i(a_i) = 1 and T_i(b) = 0 below a_i; otherwise
T_i(b) = T_i(b - a_i) + ... + T_n(b - a_i), and the denumerant of b is
T_1(b) + ... + T_n(b).  Only the trailing a_n + 1 columns are ever needed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernel
from .errors import InvalidInstanceError, ResourceLimitError
from .lattice import gcd_vector


def mem_limit_bytes() -> int | None:
    raw = os.environ.get("KFROB_MEM_LIMIT_MB")
    if not raw:
        return None
    return int(float(raw) * 1024 * 1024)


def check_allocation(nbytes: int, what: str) -> None:
    limit = mem_limit_bytes()
    if limit is not None and nbytes > limit:
        raise ResourceLimitError(
            f"{what} needs ~{nbytes // 2**20} MiB, above KFROB_MEM_LIMIT_MB"
        )


@dataclass(frozen=True)
class Counter:
    """A count that may be saturated: value == cap means "at least cap"."""

    value: int
    cap: int | None = None

    @property
    def saturated(self) -> bool:
        return self.cap is not None and self.value >= self.cap

    def __int__(self) -> int:
        return self.value

    def at_least(self, k: int) -> bool:
        return self.value >= k


@dataclass(frozen=True)
class KnapsackInstance:
    """Positive coefficients sorted ascending; ``order`` maps back to input positions."""

    a: tuple[int, ...]
    order: tuple[int, ...] = ()
    primitive: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "primitive", gcd_vector(self.a) == 1)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "KnapsackInstance":
        coeffs = [int(c) for c in coeffs]
        if not coeffs:
            raise InvalidInstanceError("empty coefficient vector")
        if any(c <= 0 for c in coeffs):
            raise InvalidInstanceError("coefficients must be positive")
        order = sorted(range(len(coeffs)), key=lambda i: coeffs[i])
        return cls(tuple(coeffs[i] for i in order), tuple(order))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def distinct(self) -> bool:
        return len(set(self.a)) == len(self.a)


def _saturate(x: int, cap: int | None) -> int:
    return x if cap is None or x < cap else cap


class DenumerantTable:
    """Rolling DP state. Single writer; advance one right-hand side at a time."""

    def __init__(self, instance: KnapsackInstance, cap: int | None = None):
        if cap is not None and cap < 1:
            raise ValueError("cap must be positive")
        self.instance = instance
        self.cap = cap
        self.width = instance.a[-1] + 1
        check_allocation(self.width * instance.n * 8, "denumerant window")
        self.window: list[list[int]] = [[0] * instance.n for _ in range(self.width)]
        a = instance.a
        # b <= a_1 <= a_i: only the base case can be nonzero
        for b in range(a[0] + 1):
            self.window[b % self.width] = [1 if b == ai else 0 for ai in a]
        self.frontier = a[0]

    def T(self, i: int, b: int) -> int:
        """T_{i+1}(b) with 0-based i; b must still be inside the window."""
        if b < 0:
            return 0
        if b > self.frontier or b <= self.frontier - self.width:
            raise IndexError(f"column {b} is outside the retained window")
        return self.window[b % self.width][i]

    def column(self, b: int) -> list[int]:
        return [self.T(i, b) for i in range(self.instance.n)]

    def count(self, b: int) -> Counter:
        if b == 0:
            return Counter(_saturate(1, self.cap), self.cap)
        return Counter(_saturate(sum(self.column(b)), self.cap), self.cap)

    def advance(self) -> "DenumerantTable":
        b = self.frontier + 1
        a = self.instance.a
        n = len(a)
        col = [0] * n
        for i in range(n):
            ai = a[i]
            if b == ai:
                col[i] = 1
            elif b > ai:
                prev = self.window[(b - ai) % self.width]
                col[i] = _saturate(sum(prev[i:]), self.cap)
        self.window[b % self.width] = col
        self.frontier = b
        return self


def table_new(instance: KnapsackInstance, cap: int | None = None) -> DenumerantTable:
    return DenumerantTable(instance, cap)


def table_advance(t: DenumerantTable) -> DenumerantTable:
    return t.advance()


def _instance(a) -> KnapsackInstance:
    return a if isinstance(a, KnapsackInstance) else KnapsackInstance.from_coeffs(a)


def count_stream(a, b_max: int, cap: int | None = None) -> Iterator[tuple[int, Counter]]:
    """Yield (b, count) for b = 0..b_max using O(n a_n) memory."""
    if b_max < 0:
        raise ValueError("b_max must be >= 0")
    table = DenumerantTable(_instance(a), cap)
    for b in range(min(b_max, table.frontier) + 1):
        yield b, table.count(b)
    while table.frontier < b_max:
        table.advance()
        yield table.frontier, table.count(table.frontier)


def representation_count(a, b: int) -> int:
    """Exact number of x >= 0 with a.x = b."""
    if b < 0:
        raise ValueError("right-hand side must be nonnegative")
    inst = _instance(a)
    if b == 0:
        return 1
    table = DenumerantTable(inst)
    while table.frontier < b:
        table.advance()
    return table.count(b).value


def saturated_counts(a, b_max: int, cap: int) -> np.ndarray:
    """Array of min(cap, count(b)) for b = 0..b_max via the compiled kernel."""
    inst = _instance(a)
    if cap * inst.n >= _kernel.INT64_SAFE:
        raise ValueError("cap too large for the int64 kernel; use count_stream")
    check_allocation((b_max + 1 + inst.a[-1] * (inst.n + 1)) * 8, "saturated count array")
    return _kernel.counts_saturated(np.asarray(inst.a, dtype=np.int64), cap, b_max)
