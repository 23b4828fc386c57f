"""Staircases of >=k-feasible exponents and their standard-pair complements.

For a base point f the set L = {lam >= 0 : f + A lam has >= k representations}
is closed under adding nonnegative vectors, so it is the exponent set of a
monomial ideal.  For a single row the minimal generators are read off the
least admissible last coordinate of each prefix; for d > 1 a bounded scan is
used.  The complement (the standard monomials) is described as translated
coordinate subspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .denumerant import saturated_counts
from .errors import IncompleteBasisError, InvalidInstanceError, NotPointedError
from .frobenius import k_frobenius
from .lattice import (
    IntMatrix,
    MatrixInstance,
    as_matrix,
    in_cone,
    is_pointed,
    positive_functional,
    validate_matrix,
)
from .strata import Box, vector_partition_count

DEFAULT_SEARCH_BOUND = 8

COMPLETE = "complete"
BOXED = "boxed"


def dominates(lam: Sequence[int], g: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(lam, g))


@dataclass(frozen=True)
class StaircaseBasis:
    matrix: MatrixInstance
    k: int
    f: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    search_bound: int
    certificate: str
    boundary_touching: bool = False

    @property
    def m_value(self) -> int | None:
        """Least sup-norm of a generator (None for an empty basis)."""
        if not self.generators:
            return None
        return min(max(g) for g in self.generators)

    @property
    def n(self) -> int:
        return self.matrix.matrix.n

    def in_ideal(self, lam: Sequence[int]) -> bool:
        return any(dominates(lam, g) for g in self.generators)


@dataclass(frozen=True)
class StandardPair:
    """offset + span of the unit vectors in ``free`` (0-based coordinates)."""

    offset: tuple[int, ...]
    free: frozenset[int]

    def __contains__(self, lam) -> bool:
        return all(
            (x >= 0) if j in self.free else (x == u)
            for j, (x, u) in enumerate(zip(lam, self.offset))
        )

    def contains_pair(self, other: "StandardPair") -> bool:
        if not other.free <= self.free:
            return False
        return all(other.offset[j] == self.offset[j] for j in range(len(self.offset)) if j not in self.free)


def graded_lex(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All lam in [0, bound]^n by total degree, lexicographically within a degree."""

    def comps(total: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if total <= bound:
                yield (total,)
            return
        for first in range(min(total, bound), -1, -1):
            for rest in comps(total - first, slots - 1):
                yield (first,) + rest

    for total in range(n * bound + 1):
        yield from comps(total, n)


def _complete_bound_d1(a: Sequence[int], k: int, f: int) -> int | None:
    """Sup-norm bound on every minimal generator for a primitive positive row.

    If lam is minimal and lam_i > 0 then f + a.lam - a_i <= F_k, hence
    lam_i a_i <= f + a.lam <= F_k + a_i, i.e. lam_i <= (F_k - f) / a_i + 1.
    """
    F = k_frobenius(a, k).f_k
    return max(1, max(F - f, 0) // min(a) + 1)


def _normalise_row(A: IntMatrix, f: tuple[int, ...]):
    """Positive primitive version of a pointed row: (a', f') or None if L is empty."""
    a = list(A.rows[0])
    fv = f[0]
    if a[0] < 0:
        a = [-x for x in a]
        fv = -fv
    g = math.gcd(*a)
    if fv % g:
        return None
    return tuple(x // g for x in a), fv // g


def _prefixes(head: Sequence[int], start: int, limit: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All p in [0, bound]^len(head) with start + head.p <= limit."""
    if not head:
        yield ()
        return
    for x in range(min(bound, (limit - start) // head[0]) + 1 if start <= limit else 0):
        for rest in _prefixes(head[1:], start + head[0] * x, limit, bound):
            yield (x,) + rest


def _generators_d1(a: tuple[int, ...], fv: int, k: int, bound: int) -> list[tuple[int, ...]]:
    """Minimal generators inside [0, bound]^n for a primitive positive row.

    With s(p) the least last coordinate putting (p, s) in the ideal, the
    generators are exactly the (p, s(p)) with s(p - e_j) > s(p) for every j in
    supp(p).  Past F_k + max(a) only the zero prefix (empty support) can qualify.
    """
    F = k_frobenius(a, k).f_k
    an = a[-1]
    top = max(F, fv) + 2 * max(a) + 1
    ok = saturated_counts(a, top, k) >= k
    cache: dict[int, int] = {}

    def least_last(base: int) -> int:
        if base > F:
            return 0
        if base not in cache:
            cache[base] = int(np.flatnonzero(ok[base::an])[0])
        return cache[base]

    head = a[:-1]
    gens = []
    for p in _prefixes(head, fv, max(F + max(a), fv), bound):
        base = fv + sum(x * y for x, y in zip(head, p))
        s = least_last(base)
        if s > bound:
            continue
        if all(least_last(base - head[j]) > s for j in range(len(p)) if p[j]):
            gens.append(p + (s,))
    gens.sort(key=lambda g: (sum(g), tuple(-x for x in g)))
    return gens


def minimal_generators(
    A, k: int, f: Sequence[int] | None = None, search_bound: int | None = None
) -> StaircaseBasis:
    """Minimal exponents lam with f + A lam at least k-feasible.

    Rows (d = 1) are solved prefix by prefix up to a proven sup-norm bound and
    get a ``complete`` certificate; otherwise [0, search_bound]^n is scanned in graded-lex order and the basis
    is only ``boxed``.
    """
    A = as_matrix(A)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_pointed(A):
        raise NotPointedError("cone(A) is not pointed")
    f = tuple(0 for _ in range(A.d)) if f is None else tuple(int(v) for v in f)
    if len(f) != A.d:
        raise ValueError("base point has wrong dimension")
    if not in_cone(A, f):
        raise InvalidInstanceError("base point must lie in cone(A)")
    if search_bound is not None and search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    inst = validate_matrix(A)
    n = A.n

    if A.d == 1:
        norm = _normalise_row(A, f)
        if norm is None:
            # f is off the lattice of A: nothing in its orbit is representable
            return StaircaseBasis(inst, k, f, (), search_bound or 0, COMPLETE)
        a, fv = norm
        if len(a) == 1 and k > 1:
            # a = (1): every right-hand side has exactly one representation
            return StaircaseBasis(inst, k, f, (), search_bound or 0, COMPLETE)
        proven = _complete_bound_d1(a, k, fv)
        certificate = COMPLETE if search_bound is None or search_bound >= proven else BOXED
        bound = proven if search_bound is None else search_bound
        gens = _generators_d1(a, fv, k, bound)
    else:
        certificate = BOXED
        bound = DEFAULT_SEARCH_BOUND if search_bound is None else search_bound
        gens = []
        for lam in graded_lex(n, bound):
            if any(dominates(lam, g) for g in gens):
                continue
            b = tuple(fi + bi for fi, bi in zip(f, A.apply(lam)))
            if vector_partition_count(A, b, cap=k).value >= k:
                gens.append(lam)
    touching = any(max(g) == bound for g in gens)
    return StaircaseBasis(inst, k, f, tuple(gens), bound, certificate, touching)


def _check_usable(basis: StaircaseBasis) -> None:
    if basis.certificate != COMPLETE and basis.boundary_touching:
        raise IncompleteBasisError(
            "boxed basis has generators on the search boundary; raise the search bound"
        )


def standard_pairs(basis: StaircaseBasis) -> list[StandardPair]:
    """Cover of the standard exponents by translated coordinate subspaces."""
    _check_usable(basis)
    n = basis.n
    gens = basis.generators
    out: list[StandardPair] = []

    def rec(offset: tuple[int, ...], free: frozenset[int]) -> None:
        # generators still reachable from this region, viewed on the free coordinates
        live = [g for g in gens if all(g[j] <= offset[j] for j in range(n) if j not in free)]
        if not live:
            out.append(StandardPair(offset, free))
            return
        if any(all(g[j] == 0 for j in free) for g in live):
            return  # whole region lies in the ideal
        g = min(live, key=lambda g: (sum(g[j] for j in free), g))
        for j in sorted(free):
            if g[j] == 0:
                continue
            for v in range(g[j]):
                rec(offset[:j] + (v,) + offset[j + 1:], free - {j})

    rec((0,) * n, frozenset(range(n)))
    unique = sorted(set(out), key=lambda p: (-len(p.free), sorted(p.free), p.offset))
    pruned: list[StandardPair] = []
    for p in unique:
        if not any(q.contains_pair(p) for q in pruned):
            pruned.append(p)
    return pruned


def holes_from_staircase(A, k: int, f: Sequence[int], basis: StaircaseBasis, box: Box) -> list[tuple[int, ...]]:
    """The k-holes f + A lam (lam standard) that fall inside ``box``."""
    A = as_matrix(A)
    f = tuple(f)
    if basis.k != k or basis.f != f:
        raise ValueError("basis was computed for a different (k, f)")
    _check_usable(basis)
    y = positive_functional(A)
    y_max = sum(max(yi * lo, yi * hi) for yi, lo, hi in zip(y, box.lower, box.upper))
    slack = y_max - sum(yi * fi for yi, fi in zip(y, f))
    if slack < 0:
        return []
    weights = [sum(yi * c for yi, c in zip(y, col)) for col in A.columns]
    limits = [slack // w for w in weights]
    if basis.certificate != COMPLETE and max(limits) > basis.search_bound:
        raise IncompleteBasisError("box reaches exponents beyond the boxed search")
    out = set()
    for lam in np.ndindex(*(lim + 1 for lim in limits)):
        if basis.in_ideal(lam):
            continue
        b = tuple(fi + bi for fi, bi in zip(f, A.apply(lam)))
        if b in box:
            out.add(b)
    return sorted(out)
