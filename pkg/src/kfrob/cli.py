"""``kfrob`` command line: one subcommand per module, JSON on stdout by default.

Exit status is 0 on success, 1 on a domain error (bad instance, violated
assumption, resource limit) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import KfrobError

FORMATS = ("json", "csv", "text")
CAP_POLICIES = ("exact", "saturate")
JSON_SAFE = 2**53


@dataclass(frozen=True)
class GlobalConfig:
    """Options shared by every subcommand.

    cap_policy "exact" counts with unbounded integers unless ``--cap`` is
    given; "saturate" always uses the int64 kernel with a cap of 2**62 // n.
    """

    format: str = "json"
    cap_policy: str = "exact"
    mem_limit_mb: float | None = None
    workers: int = 1
    seed: int = 0

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "GlobalConfig":
        return cls(ns.format, ns.cap_policy, ns.mem_limit_mb, ns.workers, ns.seed)

    @contextlib.contextmanager
    def applied(self):
        """Export the memory limit for the duration of one command."""
        old = os.environ.get("KFROB_MEM_LIMIT_MB")
        if self.mem_limit_mb is not None:
            os.environ["KFROB_MEM_LIMIT_MB"] = str(self.mem_limit_mb)
        try:
            yield self
        finally:
            if old is None:
                os.environ.pop("KFROB_MEM_LIMIT_MB", None)
            else:
                os.environ["KFROB_MEM_LIMIT_MB"] = old


class UsageError(Exception):
    pass


def num(v: int) -> int | str:
    """Integers past double precision become decimal strings."""
    return v if abs(v) <= JSON_SAFE else str(v)


def parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected integers separated by commas or spaces, got {text!r}") from None


def parse_matrix(text: str):
    from .lattice import IntMatrix

    try:
        return IntMatrix.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}; use spaces between entries and ';' between rows") from None


def _coeffs(ns) -> list[int]:
    a = parse_ints(ns.coeffs)
    if not a:
        raise UsageError("--coeffs needs at least one integer")
    return a


# subcommands -----------------------------------------------------------------


def cmd_denumerant(ns, cfg: GlobalConfig) -> dict:
    from .denumerant import representation_count, saturated_counts
    from . import _kernel

    a = _coeffs(ns)
    if ns.rhs < 0:
        raise UsageError("--rhs must be >= 0")
    if ns.cap is not None and ns.cap < 1:
        raise UsageError("--cap must be >= 1")
    cap = ns.cap
    if cap is None and cfg.cap_policy == "saturate":
        cap = _kernel.INT64_SAFE // len(a) - 1
    if cap is not None and cap * len(a) < _kernel.INT64_SAFE:
        value = int(saturated_counts(a, ns.rhs, cap)[ns.rhs])
    else:
        value = representation_count(a, ns.rhs)
        if cap is not None:
            value = min(value, cap)
    return {"coeffs": a, "rhs": ns.rhs, "count": str(value), "saturated": cap is not None and value >= cap}


def cmd_frobenius(ns, cfg: GlobalConfig) -> dict:
    from .frobenius import k_frobenius

    res = k_frobenius(_coeffs(ns), ns.k, with_g_values=ns.g_values)
    out = {"coeffs": list(res.instance.a), "f_k": num(res.f_k), "k": ns.k, "max_rhs_scanned": num(res.max_rhs_scanned)}
    if res.g_values is not None:
        out["g_values"] = {str(j): num(v) for j, v in res.g_values.items()}
    return out


def cmd_gk(ns, cfg: GlobalConfig) -> dict:
    from .frobenius import g_exact

    res = g_exact(_coeffs(ns), ns.k)
    return {
        "coeffs": list(res.a),
        "k": ns.k,
        "g_k": num(res.g_k),
        "exists": res.exists,
        "max_rhs_scanned": num(res.max_rhs_scanned),
    }


def cmd_verify_g0g1(ns, cfg: GlobalConfig) -> dict:
    from .frobenius import verify_g0_lt_g1

    rep = verify_g0_lt_g1(ns.bound, workers=cfg.workers)
    return {
        "bound": rep.bound,
        "triples_checked": rep.triples_checked,
        "violations": [{"triple": list(v[:3]), "g0": num(v[3]), "g1": num(v[4])} for v in rep.violations],
    }


def _box(ns, A):
    from .strata import Box

    try:
        return Box.parse(ns.box, A.d)
    except ValueError as exc:
        raise UsageError(f"bad --box {ns.box!r}: {exc}; use lo:hi or lo:hi,lo:hi,...") from None


def cmd_stratify(ns, cfg: GlobalConfig) -> dict:
    from .strata import stratify_box

    A = parse_matrix(ns.matrix)
    box = _box(ns, A)
    rep = stratify_box(A, ns.k, box)
    return {
        "matrix": A.to_list(),
        "k": ns.k,
        "box": {"lower": list(box.lower), "upper": list(box.upper)},
        "assumptions_ok": rep.matrix.assumptions_ok,
        "strata": {key: [list(p) for p in pts] for key, pts in rep.strata().items()},
    }


def cmd_holes(ns, cfg: GlobalConfig) -> dict:
    from .strata import fundamental_k_holes, holes_in_box

    A = parse_matrix(ns.matrix)
    if ns.fundamental:
        rep = fundamental_k_holes(A, ns.k)
        return {
            "matrix": A.to_list(),
            "k": ns.k,
            "fundamental_holes": [list(h) for h in rep.fundamental_holes],
            "holes_in_zonotope_box": [list(h) for h in rep.all_holes_in_box],
            "zonotope_points_scanned": rep.zonotope_points_scanned,
            "off_lattice": [list(h) for h, ok in rep.in_lattice.items() if not ok],
            "minor_gcd_ok": rep.minor_gcd_ok,
        }
    if ns.box is None:
        raise UsageError("holes needs --box unless --fundamental is given")
    box = _box(ns, A)
    return {"matrix": A.to_list(), "k": ns.k, "holes": [list(h) for h in holes_in_box(A, ns.k, box)]}


def cmd_staircase(ns, cfg: GlobalConfig) -> dict:
    from .staircase import minimal_generators, standard_pairs

    A = parse_matrix(ns.matrix)
    f = parse_ints(ns.f) if ns.f is not None else None
    if f is not None and len(f) == 1 and A.d > 1:
        f = f * A.d
    basis = minimal_generators(A, ns.k, f, ns.bound)
    out = {
        "matrix": A.to_list(),
        "k": ns.k,
        "f": list(basis.f),
        "generators": [list(g) for g in basis.generators],
        "m": basis.m_value,
        "certificate": basis.certificate,
        "search_bound": basis.search_bound,
        "boundary_touching": basis.boundary_touching,
    }
    if ns.pairs:
        out["standard_pairs"] = [
            {"offset": list(p.offset), "free": sorted(p.free)} for p in standard_pairs(basis)
        ]
    return out


def cmd_bounds(ns, cfg: GlobalConfig) -> dict:
    from .bounds import bounds_report

    if (ns.coeffs is None) == (ns.matrix is None):
        raise UsageError("bounds needs exactly one of --coeffs or --matrix")
    A = parse_matrix(ns.matrix) if ns.matrix is not None else [_coeffs(ns)]
    return bounds_report(A, ns.k, ns.bound).to_json()


def cmd_experiment(ns, cfg: GlobalConfig) -> dict:
    from .experiments import ExperimentConfig, conjecture_report, run_experiment, write_outputs

    try:
        config = ExperimentConfig(ns.T, tuple(parse_ints(ns.k)), ns.samples, cfg.seed, cfg.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_experiment(config)
    if ns.out:
        write_outputs(result, ns.out, ns.summary_out)
    elif ns.summary_out:
        write_outputs(result, os.devnull, ns.summary_out)
    out = result.summary_json()
    if len(set(config.k_list)) >= 2:
        out["conjecture"] = conjecture_report(result)
    return out


# plumbing --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--format", choices=FORMATS, default="json", help="output format (default json)")
    g.add_argument("--cap-policy", choices=CAP_POLICIES, default="exact", help="counting mode (default exact)")
    g.add_argument("--mem-limit-mb", type=float, default=None, help="cap DP windows and boxes (also KFROB_MEM_LIMIT_MB)")
    g.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    g.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="kfrob", description="k-Frobenius numbers and k-feasibility toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    p = add("denumerant", cmd_denumerant, "count representations of rhs by coeffs")
    p.add_argument("--coeffs", required=True, help="positive integers, e.g. 3,5,8")
    p.add_argument("--rhs", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="saturate the count at this value")

    p = add("frobenius", cmd_frobenius, "k-Frobenius number F_k")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g-values", action="store_true", help="also report g_j for j < k")

    p = add("gk", cmd_gk, "largest positive b with exactly k representations")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("verify-g0g1", cmd_verify_g0g1, "check g_0 < g_1 on all coprime triples up to a bound")
    p.add_argument("--bound", type=int, required=True)

    p = add("stratify", cmd_stratify, "label lattice points of a box by representation count")
    p.add_argument("--matrix", required=True, help='rows separated by ";", e.g. "1 1 1; 0 1 2"')
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--box", required=True, help="lo:hi for every coordinate, or lo:hi,lo:hi,...")

    p = add("holes", cmd_holes, "k-holes in a box, or the fundamental k-holes")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--box", default=None)
    p.add_argument("--fundamental", action="store_true")

    p = add("staircase", cmd_staircase, "minimal generators of the k-feasible exponent ideal")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--f", default=None, help="base point (default 0)")
    p.add_argument("--bound", type=int, default=None, help="sup-norm search bound")
    p.add_argument("--pairs", action="store_true", help="also list standard pairs")

    p = add("bounds", cmd_bounds, "closed-form bounds, with exact F_k for a single row")
    p.add_argument("--coeffs", default=None)
    p.add_argument("--matrix", default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="staircase search bound")

    p = add("experiment", cmd_experiment, "average F_k / sqrt(a1 a2 a3) over random triples")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--k", required=True, help="comma separated k values")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--out", default=None, help="CSV path")
    p.add_argument("--summary-out", default=None, help="JSON summary path")
    return parser


def _cell(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(payload.keys())
        w.writerow(_cell(v) for v in payload.values())
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{k}: {_cell(v)}" for k, v in payload.items())


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # exits with 2 on usage errors
    cfg = GlobalConfig.from_args(ns)
    if cfg.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        with cfg.applied():
            payload = ns.func(ns, cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except KfrobError as exc:
        print(f"kfrob: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # argument values the library rejects (k < 1, mismatched dimensions, ...)
        print(f"kfrob: usage error: {exc}", file=sys.stderr)
        return 2
    print(render(payload, cfg.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
