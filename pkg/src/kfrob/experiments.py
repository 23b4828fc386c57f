"""Average behaviour of normalised k-Frobenius numbers of random triples.

For coprime triples a1 < a2 < a3 drawn from [2, T] we average
F_k(a) / sqrt(a1 a2 a3) and compare with sqrt(2k).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .bounds import thm2_bound
from .frobenius import frobenius_numbers

CSV_COLUMNS = ("a1", "a2", "a3", "k", "f_k", "normalized")


@dataclass(frozen=True)
class ExperimentConfig:
    T: int
    k_list: tuple[int, ...] = (1,)
    samples: int = 100
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        # three distinct values in [2, T] need T >= 4
        if self.T < 4:
            raise ValueError("T must be >= 4")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.k_list or min(self.k_list) < 1:
            raise ValueError("k_list must hold positive integers")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def draw_triple(seed: int, index: int, T: int) -> tuple[int, int, int]:
    """The ``index``-th sample; its own RNG stream, so workers never matter."""
    rng = np.random.default_rng([seed, index])
    while True:
        a = sorted(int(v) for v in rng.integers(2, T + 1, size=3))
        if a[0] < a[1] < a[2] and math.gcd(*a) == 1:
            return tuple(a)


def sample_triples(config: ExperimentConfig) -> list[tuple[int, int, int]]:
    return [draw_triple(config.seed, i, config.T) for i in range(config.samples)]


@dataclass
class KSummary:
    k: int
    n_rows: int
    A_k: float
    stderr: float
    slope: float | None
    intercept: float | None
    regression_A_k: float | None  # exp of the intercept with the slope pinned at 1/2
    sqrt2k: float
    thm2_violations: int = 0


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[tuple[int, int, int, int, int, float]]
    summaries: dict[int, KSummary]
    skipped: list[tuple[tuple[int, int, int], str]] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for a1, a2, a3, k, f, norm in self.rows:
            w.writerow((a1, a2, a3, k, f, repr(norm)))
        return buf.getvalue()

    def summary_json(self) -> dict:
        return {
            "config": {**asdict(self.config), "k_list": list(self.config.k_list)},
            "per_k": {str(k): asdict(s) for k, s in sorted(self.summaries.items())},
            "skipped": [{"triple": list(t), "error": e} for t, e in self.skipped],
        }


def _f_values(args) -> tuple[tuple[int, int, int], dict[int, int] | str]:
    triple, ks = args
    try:
        return triple, frobenius_numbers(triple, ks)
    except Exception as exc:  # recorded as a skipped row
        return triple, f"{type(exc).__name__}: {exc}"


def _ols(x: Sequence[float], y: Sequence[float]) -> tuple[float, float] | tuple[None, None]:
    if len(x) < 2:
        return None, None
    mx = math.fsum(x) / len(x)
    my = math.fsum(y) / len(y)
    sxx = math.fsum((xi - mx) ** 2 for xi in x)
    if sxx == 0:
        return None, None
    slope = math.fsum((xi - mx) * (yi - my) for xi, yi in zip(x, y)) / sxx
    return slope, my - slope * mx


def summarise(k: int, rows: list[tuple[int, int, int, int, int, float]]) -> KSummary:
    vals = sorted(r[5] for r in rows)
    n = len(vals)
    mean = math.fsum(vals) / n if n else float("nan")
    stderr = math.sqrt(math.fsum((v - mean) ** 2 for v in vals) / (n - 1) / n) if n > 1 else float("nan")
    pos = sorted((math.log(r[0] * r[1] * r[2]), math.log(r[4])) for r in rows if r[4] > 0)
    slope, intercept = _ols([p[0] for p in pos], [p[1] for p in pos])
    reg = math.exp(math.fsum(ly - 0.5 * lp for lp, ly in pos) / len(pos)) if pos else None
    return KSummary(k, n, mean, stderr, slope, intercept, reg, math.sqrt(2 * k))


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    triples = sample_triples(config)
    jobs = [(t, config.k_list) for t in triples]
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(config.workers) as pool:
            results = list(pool.map(_f_values, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    else:
        results = [_f_values(j) for j in jobs]

    rows = []
    skipped = []
    for triple, fk in results:
        if isinstance(fk, str):
            skipped.append((triple, fk))
            continue
        root = math.sqrt(triple[0] * triple[1] * triple[2])
        for k in config.k_list:
            rows.append((*triple, k, fk[k], fk[k] / root))

    summaries = {}
    for k in sorted(set(config.k_list)):
        krows = [r for r in rows if r[3] == k]
        s = summarise(k, krows)
        s.thm2_violations = sum(1 for r in krows if r[4] > thm2_bound([r[:3]], k))
        summaries[k] = s
    return ExperimentResult(config, rows, summaries, skipped)


def conjecture_report(result: ExperimentResult) -> dict:
    """Tabulate A_k - sqrt(2k); no verdict is drawn."""
    ks = sorted(result.summaries)
    if len(ks) < 2:
        raise ValueError("conjecture report needs at least two distinct k")
    table = []
    for k in ks:
        s = result.summaries[k]
        gap = s.A_k - s.sqrt2k
        row = {
            "k": k,
            "A_k": s.A_k,
            "sqrt2k": s.sqrt2k,
            "gap": gap,
            "relative_deviation": gap / s.sqrt2k,
        }
        if s.regression_A_k is not None:
            row["regression_A_k"] = s.regression_A_k
            row["regression_gap"] = s.regression_A_k - s.sqrt2k
        table.append(row)
    return {"T": result.config.T, "samples": result.config.samples, "rows": table}


def format_conjecture_report(report: dict) -> str:
    lines = [f"T={report['T']} samples={report['samples']}", f"{'k':>8} {'A_k':>12} {'sqrt(2k)':>12} {'gap':>10} {'rel':>9}"]
    for r in report["rows"]:
        lines.append(
            f"{r['k']:>8} {r['A_k']:>12.4f} {r['sqrt2k']:>12.4f} {r['gap']:>10.4f} {r['relative_deviation']:>9.4f}"
        )
    return "\n".join(lines)


def write_outputs(result: ExperimentResult, csv_path: str, json_path: str | None = None) -> None:
    with open(csv_path, "w", newline="") as fh:
        fh.write(result.to_csv())
    if json_path:
        with open(json_path, "w") as fh:
            json.dump(result.summary_json(), fh, indent=2, sort_keys=True)
