"""Average normalized k-Frobenius numbers of random triples.

Writes one CSV of per-sample rows and a JSON summary per k, then prints the
A_k versus sqrt(2k) comparison.

    python scripts/run_average_experiment.py --T 1000 --k 1 2 8 32 --samples 500
"""

import argparse
import json
import logging
from pathlib import Path

from kfrob.experiments import ExperimentConfig, conjecture_report, format_conjecture_report, run_experiment, write_outputs

log = logging.getLogger("average")


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--T", type=int, default=1000)
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 8, 32, 128, 1000])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--outdir", type=Path, default=Path("results"))
    args = p.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    config = ExperimentConfig(args.T, tuple(args.k), args.samples, args.seed, args.workers)
    log.info("running %s", config)
    result = run_experiment(config)
    args.outdir.mkdir(parents=True, exist_ok=True)
    stem = f"average_T{args.T}_n{args.samples}_s{args.seed}"
    write_outputs(result, args.outdir / f"{stem}.csv", args.outdir / f"{stem}.json")
    for k, s in sorted(result.summaries.items()):
        log.info("k=%d  A_k=%.4f  stderr=%.4f  slope=%s  det-bound violations=%d", k, s.A_k, s.stderr, s.slope, s.thm2_violations)
    if len(result.summaries) > 1:
        report = conjecture_report(result)
        (args.outdir / f"{stem}_conjecture.json").write_text(json.dumps(report, indent=2))
        print(format_conjecture_report(report))


if __name__ == "__main__":
    main()
