"""Stratification of cone(A) lattice points by number of representations.

Works for general d x n matrices by explicit enumeration inside a box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .denumerant import Counter, check_allocation
from .errors import (
    AssumptionViolatedError,
    BoxTooLargeError,
    NotPointedError,
    SearchExhaustedError,
)
from .lattice import (
    IntMatrix,
    MatrixInstance,
    as_matrix,
    in_cone,
    in_cone_interior,
    in_half_open_zonotope,
    in_lattice,
    is_pointed,
    positive_functional,
    validate_matrix,
    zonotope_bounding_box,
)

DEFAULT_CELL_LIMIT = 2_000_000


@dataclass(frozen=True)
class Box:
    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("box bounds have different dimensions")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("box lower bound exceeds upper bound")

    @classmethod
    def cube(cls, d: int, lo: int, hi: int) -> "Box":
        return cls((lo,) * d, (hi,) * d)

    @classmethod
    def parse(cls, text: str, d: int) -> "Box":
        """``"0:12"`` (broadcast to every coordinate) or ``"0:5,-2:3"``."""
        parts = [p for p in text.split(",") if p.strip()]
        ranges = []
        for p in parts:
            lo, hi = p.split(":")
            ranges.append((int(lo), int(hi)))
        if len(ranges) == 1:
            ranges = ranges * d
        if len(ranges) != d:
            raise ValueError(f"box has {len(ranges)} ranges, matrix has {d} rows")
        return cls(tuple(r[0] for r in ranges), tuple(r[1] for r in ranges))

    @property
    def d(self) -> int:
        return len(self.lower)

    @property
    def cells(self) -> int:
        out = 1
        for lo, hi in zip(self.lower, self.upper):
            out *= hi - lo + 1
        return out

    def __contains__(self, b) -> bool:
        return all(lo <= x <= hi for lo, x, hi in zip(self.lower, b, self.upper))

    def points(self) -> Iterator[tuple[int, ...]]:
        """Lattice points in lexicographic order."""
        return itertools.product(*(range(lo, hi + 1) for lo, hi in zip(self.lower, self.upper)))


class _Counter:
    """Cached depth-first lattice-point counter for one pointed matrix."""

    def __init__(self, A: IntMatrix):
        self.A = A
        if not is_pointed(A):
            raise NotPointedError("cone(A) is not pointed; counts would be infinite")
        self.y = positive_functional(A)
        self.weights = [sum(yi * c for yi, c in zip(self.y, col)) for col in A.columns]
        self.cols = A.columns
        self.count = lru_cache(maxsize=None)(self._count)

    def _count(self, b: tuple[int, ...], cap: int | None) -> int:
        n = len(self.cols)
        cols = self.cols
        w = self.weights
        found = 0

        def last(r, col) -> int:
            # x_1 is forced by the residual
            x = None
            for ri, ci in zip(r, col):
                if ci:
                    if ri % ci:
                        return 0
                    q = ri // ci
                    if x is None:
                        x = q
                    elif x != q:
                        return 0
                elif ri:
                    return 0
            if x is None:
                return 1
            return 1 if x >= 0 else 0

        def rec(j: int, r: tuple[int, ...]) -> bool:
            nonlocal found
            if j == 0:
                found += last(r, cols[0])
                return cap is not None and found >= cap
            col = cols[j]
            budget = sum(yi * ri for yi, ri in zip(self.y, r))
            if budget < 0:
                return False
            for xj in range(budget // w[j] + 1):
                nr = tuple(ri - xj * ci for ri, ci in zip(r, col))
                if rec(j - 1, nr):
                    return True
            return False

        rec(n - 1, tuple(b))
        return found if cap is None else min(found, cap)


@lru_cache(maxsize=64)
def _counter_for(A: IntMatrix) -> _Counter:
    return _Counter(A)


def vector_partition_count(A, b: Sequence[int], cap: int | None = None) -> Counter:
    """Number of x in Z^n_{>=0} with Ax = b, optionally saturated at ``cap``."""
    A = as_matrix(A)
    if len(b) != A.d:
        raise ValueError("right-hand side has wrong dimension")
    value = _counter_for(A).count(tuple(int(v) for v in b), cap)
    return Counter(value, cap)


@dataclass
class StratificationReport:
    matrix: MatrixInstance
    k: int
    box: Box
    counts: dict[tuple[int, ...], int]  # saturated at k + 1, only cone(A) points

    def at_least(self, k: int | None = None) -> list[tuple[int, ...]]:
        k = self.k if k is None else k
        if k > self.k + 1:
            raise ValueError("counts are only exact up to k + 1")
        return [b for b, c in self.counts.items() if c >= k]

    def exactly(self, j: int) -> list[tuple[int, ...]]:
        if j > self.k:
            raise ValueError("counts are only exact up to k")
        return [b for b, c in self.counts.items() if c == j]

    def fewer_than(self, k: int | None = None) -> list[tuple[int, ...]]:
        k = self.k if k is None else k
        return [b for b, c in self.counts.items() if c < k]

    def label(self, b) -> str:
        c = self.counts[tuple(b)]
        return f">={self.k}" if c >= self.k else f"={c}"

    def strata(self) -> dict[str, list[tuple[int, ...]]]:
        out: dict[str, list[tuple[int, ...]]] = {f">={self.k}": self.at_least()}
        for j in range(self.k):
            out[f"={j}"] = self.exactly(j)
        return out


def _require_pointed(A: IntMatrix) -> None:
    if not is_pointed(A):
        raise NotPointedError("cone(A) is not pointed")


def stratify_box(A, k: int, box: Box, cell_limit: int = DEFAULT_CELL_LIMIT) -> StratificationReport:
    A = as_matrix(A)
    if k < 1:
        raise ValueError("k must be >= 1")
    _require_pointed(A)
    if box.d != A.d:
        raise ValueError("box dimension does not match the matrix")
    if box.cells > cell_limit:
        raise BoxTooLargeError(f"box has {box.cells} cells (limit {cell_limit})")
    check_allocation(box.cells * 64, "stratification box")
    counts = {}
    for b in box.points():
        if in_cone(A, b):
            counts[b] = vector_partition_count(A, b, cap=k + 1).value
    return StratificationReport(validate_matrix(A), k, box, counts)


def holes_in_box(A, k: int, box: Box, cell_limit: int = DEFAULT_CELL_LIMIT) -> list[tuple[int, ...]]:
    """Sg_{<k}(A) intersected with the box, in lexicographic order."""
    return stratify_box(A, k, box, cell_limit).fewer_than()


@dataclass
class HoleReport:
    fundamental_holes: list[tuple[int, ...]]
    all_holes_in_box: list[tuple[int, ...]]
    zonotope_points_scanned: int
    in_lattice: dict[tuple[int, ...], bool] = field(default_factory=dict)
    minor_gcd_ok: bool = True


def _is_k_hole(A: IntMatrix, b, k: int) -> bool:
    return in_cone(A, b) and vector_partition_count(A, b, cap=k).value < k


def is_fundamental(A, f, k: int) -> bool:
    """f is a k-hole and no single column step back lands on another k-hole.

    Any k-hole h = f - Au with u != 0 forces f - A_j to be a k-hole for each
    j in supp(u), so checking single columns is complete.
    """
    A = as_matrix(A)
    if not _is_k_hole(A, f, k):
        return False
    for col in A.columns:
        g = tuple(x - c for x, c in zip(f, col))
        if _is_k_hole(A, g, k):
            return False
    return True


def fundamental_k_holes(A, k: int) -> HoleReport:
    A = as_matrix(A)
    _require_pointed(A)
    inst = validate_matrix(A)
    zbox = Box(*map(tuple, zip(*zonotope_bounding_box(A))))
    check_allocation(zbox.cells * 64, "zonotope bounding box")
    fundamental = []
    holes = []
    scanned = 0
    for f in zbox.points():
        if not in_cone(A, f):
            continue
        in_zonotope = in_half_open_zonotope(A, f)
        scanned += in_zonotope
        if vector_partition_count(A, f, cap=k).value >= k:
            continue
        holes.append(f)
        if in_zonotope and is_fundamental(A, f, k):
            fundamental.append(f)
    flags = {h: in_lattice(A, h) for h in holes}
    return HoleReport(fundamental, holes, scanned, flags, inst.minor_gcd_ok)


@dataclass(frozen=True)
class DiagonalEstimate:
    t_star: int
    certified: bool
    depth: int
    thm7_bound: float | None
    within_thm7_bound: bool | None


def _shell_ok(A: IntMatrix, k: int, apex: tuple[int, ...], depth: int) -> bool:
    for offset in itertools.product(range(-depth, depth + 1), repeat=A.d):
        if not in_cone_interior(A, offset):
            continue
        p = tuple(a + o for a, o in zip(apex, offset))
        if vector_partition_count(A, p, cap=k).value < k:
            return False
    return True


def diagonal_frobenius_estimate(A, k: int, t_max: int, depth: int) -> DiagonalEstimate:
    """Least integer t whose apex t*A.1 passes a finite interior-shell check.

    Only points within sup-distance ``depth`` of the apex are tested, so the
    answer is never certified.
    """
    from .bounds import thm7_diag_bound

    A = as_matrix(A)
    _require_pointed(A)
    v = tuple(sum(r) for r in A.rows)
    inst = validate_matrix(A)
    try:
        bound = thm7_diag_bound(A, k) if inst.assumptions_ok else None
    except AssumptionViolatedError:
        bound = None
    for t in range(t_max + 1):
        if _shell_ok(A, k, tuple(t * x for x in v), depth):
            within = None if bound is None else t <= bound
            return DiagonalEstimate(t, False, depth, bound, within)
    raise SearchExhaustedError(f"no t <= {t_max} passed the shell check")
