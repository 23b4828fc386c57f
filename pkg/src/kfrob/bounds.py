"""Closed-form upper/lower bounds on k-Frobenius numbers and an auditor.

Real-valued bounds are evaluated in interval arithmetic and returned as the
smallest double not below the upper endpoint, so comparing an exact integer
against them can never fail because of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import iv, mpf

from .errors import AssumptionViolatedError, IncompleteBasisError
from .lattice import IntMatrix, MatrixInstance, as_matrix, validate_matrix

iv.dps = 40


def _round_up(x) -> float:
    hi = x.b if hasattr(x, "b") else x
    f = float(hi)
    if mpf(f) < hi:
        f = math.nextafter(f, math.inf)
    return f


def _checked(A) -> MatrixInstance:
    inst = validate_matrix(A)
    d, n = inst.matrix.d, inst.matrix.n
    if not d < n:
        raise AssumptionViolatedError(f"bounds need d < n (got d={d}, n={n})")
    if not inst.minor_gcd_ok:
        raise AssumptionViolatedError(f"gcd of maximal minors is {inst.minor_gcd}, not 1")
    if not inst.pointed_ok:
        raise AssumptionViolatedError("cone(A) is not pointed")
    return inst


def _parts(A, k: int):
    inst = _checked(A)
    if k < 1:
        raise ValueError("k must be >= 1")
    c = inst.matrix.n - inst.matrix.d
    det = iv.mpf(inst.gram_det)
    # (k - 1)^(1/c); exact zero for k = 1
    root_k = iv.mpf(0) if k == 1 else iv.mpf(k - 1) ** (iv.mpf(1) / c)
    return inst, c, det, root_k


def thm2_bound(A, k: int) -> float:
    """Upper bound on F_k(A) in terms of det(AA^T) and k."""
    _, c, det, root_k = _parts(A, k)
    scale = 2 * iv.sqrt(iv.mpf(c + 1))
    val = c / scale * det + root_k / scale * det ** (iv.mpf(1) / 2 + iv.mpf(1) / (2 * c))
    return _round_up(val)


def thm7_diag_bound(A, k: int) -> float:
    """Upper bound on the diagonal k-Frobenius number g_k(A)."""
    _, c, det, root_k = _parts(A, k)
    val = iv.mpf(c) / 2 * iv.sqrt(det) + root_k / 2 * det ** (iv.mpf(1) / (2 * c))
    return _round_up(val)


def lemma3_transfer(A) -> float:
    """The factor (det(AA^T) / (n - d + 1))^(1/2)."""
    _, c, det, _ = _parts(A, 1)
    return _round_up(iv.sqrt(det / (c + 1)))


def thm3_bracket(A, k: int, basis) -> tuple[int, float]:
    """(m(A) - 1, upper bound) from the staircase generators of the k-th ideal.

    m(A) is exact even for a boxed basis: a generator of sup-norm <= the search
    bound can never be missed, so only an empty basis is unusable.
    """
    if basis.m_value is None:
        raise IncompleteBasisError("no staircase generator found inside the search box")
    if any(basis.f):
        raise IncompleteBasisError("bracket needs the basis of the zero orbit (f = 0)")
    _, c, det, _ = _parts(A, k)
    m = basis.m_value
    upper = iv.mpf(c) / (2 * iv.sqrt(iv.mpf(c + 1))) * det + m * iv.sqrt(det / (c + 1))
    return m - 1, _round_up(upper)


@dataclass
class BoundsReport:
    instance_id: str
    k: int
    gram_det: int
    n: int
    d: int
    thm2_upper: float | None = None
    thm7_diag_upper: float | None = None
    lemma3_factor: float | None = None
    thm3_lower: int | None = None
    thm3_upper: float | None = None
    computed_F_k: int | None = None
    diagonal_g_k: Fraction | None = None  # max(F_k, 0) / (a_1 + ... + a_n), d = 1 only
    informational: bool = False
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "instance": self.instance_id,
            "k": self.k,
            "gram_det": str(self.gram_det),
            "n": self.n,
            "d": self.d,
            "thm2_upper": self.thm2_upper,
            "thm7_diag_upper": self.thm7_diag_upper,
            "lemma3_factor": self.lemma3_factor,
            "thm3_lower": self.thm3_lower,
            "thm3_upper": self.thm3_upper,
            "computed_F_k": None if self.computed_F_k is None else str(self.computed_F_k),
            "informational": self.informational,
            "violations": list(self.violations),
            "notes": list(self.notes),
        }
        if self.diagonal_g_k is not None:
            out["diagonal_g_k"] = str(self.diagonal_g_k)
        return out


def check_report(report: BoundsReport) -> BoundsReport:
    """Recompute ``violations`` from the numbers stored in the report."""
    v = []
    F = report.computed_F_k
    if F is not None and not report.informational:
        if report.thm3_lower is not None and not report.thm3_lower <= F:
            v.append(f"m(A)-1 = {report.thm3_lower} > F_k = {F}")
        if report.thm3_upper is not None and not F <= report.thm3_upper:
            v.append(f"F_k = {F} > staircase upper bound {report.thm3_upper}")
        if report.thm2_upper is not None and not F <= report.thm2_upper:
            v.append(f"F_k = {F} > det bound {report.thm2_upper}")
        g = report.diagonal_g_k
        if g is not None and report.thm7_diag_upper is not None and not g <= Fraction(report.thm7_diag_upper):
            v.append(f"diagonal g_k = {g} > {report.thm7_diag_upper}")
    return replace(report, violations=v)


def bounds_report(A, k: int, search_bound: int | None = None) -> BoundsReport:
    """All bounds for one (A, k); exact F_k and a complete staircase when d = 1."""
    from .frobenius import k_frobenius
    from .staircase import minimal_generators

    A = as_matrix(A)
    inst = validate_matrix(A)
    rid = ";".join(" ".join(map(str, r)) for r in A.rows)
    rep = BoundsReport(rid, k, inst.gram_det, A.n, A.d)
    if not inst.assumptions_ok:
        rep.informational = True
        rep.notes.append("matrix violates the gcd-of-minors/pointedness assumptions; bounds not claimed")
        return rep
    rep.thm2_upper = thm2_bound(A, k)
    rep.thm7_diag_upper = thm7_diag_bound(A, k)
    rep.lemma3_factor = lemma3_transfer(A)
    if A.d == 1:
        a = A.rows[0]
        rep.computed_F_k = k_frobenius(a, k).f_k
        rep.diagonal_g_k = Fraction(max(rep.computed_F_k, 0), sum(a))
        if rep.computed_F_k > rep.lemma3_factor * rep.diagonal_g_k:
            rep.notes.append("d=1 values do not satisfy F_k <= transfer_factor * diagonal g_k")
    basis = minimal_generators(A, k, search_bound=search_bound)
    if basis.m_value is not None:
        rep.thm3_lower, rep.thm3_upper = thm3_bracket(A, k, basis)
    return check_report(rep)


def audit(instances: Iterable, k_range: Sequence[int], search_bound: int | None = None) -> list[BoundsReport]:
    """Bounds reports for every instance and k, in input order."""
    reports = []
    for inst in instances:
        for k in k_range:
            reports.append(bounds_report(inst, k, search_bound))
    return reports
