"""Check g_0 < g_1 on every coprime triple a1 < a2 < a3 <= bound."""

import argparse
import time

from kfrob.frobenius import verify_g0_lt_g1


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bound", type=int, default=60)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args(argv)
    t0 = time.perf_counter()
    rep = verify_g0_lt_g1(args.bound, workers=args.workers)
    print(f"bound={rep.bound} triples={rep.triples_checked} violations={len(rep.violations)} "
          f"({time.perf_counter() - t0:.1f}s)")
    for v in rep.violations[:20]:
        print("  ", v)


if __name__ == "__main__":
    main()
