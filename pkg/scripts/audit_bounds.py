"""Compare exact F_k of random triples against the closed-form upper bounds.

Prints one line per (triple, k) that violates a bound and a tally at the end.
"""

import argparse
import json
from collections import Counter
from pathlib import Path

from kfrob.bounds import audit
from kfrob.experiments import draw_triple


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--T", type=int, default=200)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 8, 32])
    p.add_argument("--seed", type=int, default=6)
    p.add_argument("--out", type=Path, default=None, help="optional JSON dump of every report")
    args = p.parse_args(argv)

    triples = [[draw_triple(args.seed, i, args.T)] for i in range(args.samples)]
    reports = audit(triples, args.k)
    tally = Counter()
    for r in reports:
        for v in r.violations:
            tally[v.split(" > ")[1].rsplit(" ", 1)[0]] += 1
            print(f"{r.instance_id} k={r.k}: {v}")
    print(f"{len(reports)} reports, {sum(tally.values())} violations {dict(tally)}")
    if args.out:
        args.out.write_text(json.dumps([r.to_json() for r in reports], indent=1))


if __name__ == "__main__":
    main()
