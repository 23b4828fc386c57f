"""Exact integer linear algebra and matrix validation.

Everything here works on plain Python ints (arbitrary precision) or
``fractions.Fraction``; no floating point is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import rational_lp
from .errors import InvalidInstanceError, NotPointedError

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """A d x n integer matrix stored row-major as a tuple of row tuples."""

    rows: tuple[IntVector, ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise InvalidInstanceError("matrix must have at least one row and one column")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise InvalidInstanceError("ragged matrix rows")
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in r) for r in self.rows))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def row_vector(cls, a: Iterable[int]) -> "IntMatrix":
        return cls((tuple(a),))

    @classmethod
    def parse(cls, text: str) -> "IntMatrix":
        """Parse ``"1 1 1; 0 1 2"``. Commas also separate entries."""
        rows = []
        for chunk in text.split(";"):
            entries = chunk.replace(",", " ").split()
            if entries:
                try:
                    rows.append(tuple(int(e) for e in entries))
                except ValueError as exc:
                    raise InvalidInstanceError(f"bad matrix entry in {chunk!r}") from exc
        if not rows:
            raise InvalidInstanceError("empty matrix")
        return cls(tuple(rows))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @cached_property
    def columns(self) -> tuple[IntVector, ...]:
        return tuple(zip(*self.rows))

    def apply(self, x: Sequence[int]) -> IntVector:
        return tuple(sum(a * v for a, v in zip(row, x)) for row in self.rows)

    def submatrix(self, cols: Sequence[int]) -> list[list[int]]:
        return [[row[j] for j in cols] for row in self.rows]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    if isinstance(A, str):
        return IntMatrix.parse(A)
    A = list(A)
    if A and isinstance(A[0], (int,)):
        return IntMatrix.row_vector(A)
    return IntMatrix.from_rows(A)


def gcd_vector(v: Sequence[int]) -> int:
    if len(v) == 0:
        raise InvalidInstanceError("gcd of an empty vector")
    return math.gcd(*(abs(int(x)) for x in v))


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in M]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def gram_det(A) -> int:
    """det(A A^T); zero exactly when A has rank < d."""
    A = as_matrix(A)
    if A.d > A.n:
        raise InvalidInstanceError("gram_det needs d <= n")
    gram = [[sum(x * y for x, y in zip(r, s)) for s in A.rows] for r in A.rows]
    return bareiss_det(gram)


def maximal_minors(A) -> list[int]:
    A = as_matrix(A)
    return [bareiss_det(A.submatrix(cols)) for cols in combinations(range(A.n), A.d)]


def minor_gcd(A) -> int:
    A = as_matrix(A)
    if A.d > A.n:
        raise InvalidInstanceError("minor_gcd needs d <= n")
    return math.gcd(*(abs(m) for m in maximal_minors(A)))


def is_pointed(A) -> bool:
    """True iff x >= 0, Ax = 0 forces x = 0."""
    A = as_matrix(A)
    # max sum(x) on {Ax = 0, x >= 0, sum(x) <= 1}; pointed iff the optimum is 0
    n = A.n
    a_eq = [list(r) + [0] for r in A.rows] + [[1] * n + [1]]
    b_eq = [0] * A.d + [1]
    res = rational_lp.maximize([1] * n + [0], a_eq, b_eq)
    return res.value == 0


def in_cone(A, b: Sequence[int]) -> bool:
    A = as_matrix(A)
    if A.d == 1:
        # cheap and exact for a row vector
        a = A.rows[0]
        b0 = b[0]
        return b0 == 0 or any(x * b0 > 0 for x in a)
    return rational_lp.feasible_point(A.rows, b) is not None


def in_cone_interior(A, b: Sequence[Fraction | int]) -> bool:
    """b is a strictly positive combination of the columns.

    For a cone of full dimension d this is exactly the topological interior.
    """
    A = as_matrix(A)
    n = A.n
    # vars: lambda (n), s, w (n), z ; lambda_j - s - w_j = 0, s + z = 1
    width = 2 * n + 2
    a_eq = []
    b_eq = []
    for i, row in enumerate(A.rows):
        a_eq.append(list(row) + [0] * (n + 2))
        b_eq.append(b[i])
    for j in range(n):
        r = [0] * width
        r[j] = 1
        r[n] = -1
        r[n + 1 + j] = -1
        a_eq.append(r)
        b_eq.append(0)
    r = [0] * width
    r[n] = 1
    r[-1] = 1
    a_eq.append(r)
    b_eq.append(1)
    c = [0] * width
    c[n] = 1
    res = rational_lp.maximize(c, a_eq, b_eq)
    return res.status == rational_lp.OPTIMAL and res.value > 0


def in_half_open_zonotope(A, f: Sequence[int]) -> bool:
    """f = A lam for some lam in [0, 1)^n."""
    A = as_matrix(A)
    n = A.n
    # vars: lambda (n), s, w (n), z ; lambda_j + s + w_j = 1, s + z = 1; max s > 0
    width = 2 * n + 2
    a_eq = []
    b_eq = []
    for i, row in enumerate(A.rows):
        a_eq.append(list(row) + [0] * (n + 2))
        b_eq.append(f[i])
    for j in range(n):
        r = [0] * width
        r[j] = 1
        r[n] = 1
        r[n + 1 + j] = 1
        a_eq.append(r)
        b_eq.append(1)
    r = [0] * width
    r[n] = 1
    r[-1] = 1
    a_eq.append(r)
    b_eq.append(1)
    c = [0] * width
    c[n] = 1
    res = rational_lp.maximize(c, a_eq, b_eq)
    return res.status == rational_lp.OPTIMAL and res.value > 0


def positive_functional(A) -> tuple[int, ...]:
    """Integer y with y.A_j >= 1 for every column; exists iff A is pointed."""
    A = as_matrix(A)
    d, n = A.d, A.n
    # y = p - q, p, q >= 0 ; A_j.(p - q) - s_j = 1
    a_eq = []
    for j, col in enumerate(A.columns):
        r = list(col) + [-v for v in col] + [0] * n
        r[2 * d + j] = -1
        a_eq.append(r)
    x = rational_lp.feasible_point(a_eq, [1] * n)
    if x is None:
        raise NotPointedError("cone(A) is not pointed")
    y = [x[i] - x[d + i] for i in range(d)]
    denom = math.lcm(*(v.denominator for v in y))
    return tuple(int(v * denom) for v in y)


def zonotope_bounding_box(A) -> list[tuple[int, int]]:
    """Per-coordinate integer range containing {A lam : lam in [0,1]^n}."""
    A = as_matrix(A)
    return [(sum(v for v in r if v < 0), sum(v for v in r if v > 0)) for r in A.rows]


def lattice_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Echelon basis of the integer lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for col in range(dim):
        if not rows:
            break
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            keep = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [x - q * y for x, y in zip(r, p)]
                if r[col] != 0:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        if nz:
            p = nz[0]
            basis.append(p if p[col] > 0 else [-x for x in p])
        rows = rest
    return basis


def in_lattice(A, b: Sequence[int]) -> bool:
    """b lies in the lattice generated by the columns of A."""
    A = as_matrix(A)
    vec = list(b)
    for p in lattice_basis(A.columns, A.d):
        col = next(i for i, v in enumerate(p) if v)
        if vec[col] % p[col]:
            return False
        q = vec[col] // p[col]
        vec = [x - q * y for x, y in zip(vec, p)]
    return not any(vec)


@dataclass(frozen=True)
class MatrixInstance:
    matrix: IntMatrix
    minor_gcd_ok: bool
    pointed_ok: bool
    gram_det: int
    minor_gcd: int = field(default=1)

    @property
    def assumptions_ok(self) -> bool:
        return self.minor_gcd_ok and self.pointed_ok and self.matrix.d < self.matrix.n


def validate_matrix(A) -> MatrixInstance:
    A = as_matrix(A)
    if A.d > A.n:
        return MatrixInstance(A, False, is_pointed(A), 0, 0)
    g = minor_gcd(A)
    return MatrixInstance(A, g == 1, is_pointed(A), gram_det(A), g)
