#!/usr/bin/env python3
"""Print dim H^k per homogeneous degree for every Williamson type up to n.

    python3 scripts/cohomology_table.py --n-max 2 --d-max 8
    python3 scripts/cohomology_table.py --csv table.csv
"""

import argparse
import csv
import sys
import time

from folcoh.cohomology import cohomology
from folcoh.sampling import WILLIAMSON_TYPES
from folcoh.williamson import WilliamsonBasis


def rows(n_max, d_max, with_ff):
    for kinds in WILLIAMSON_TYPES:
        B = WilliamsonBasis.from_kinds(kinds)
        if B.n > n_max or (B.k_f and not with_ff):
            continue
        for k in range(B.n + 1):
            for d in range(d_max + 1):
                s = cohomology(B, k, d, generators=False)
                yield {
                    "type": "".join(kinds),
                    "k": k,
                    "d": d,
                    "dim_space": s.dim_space,
                    "dim_H": s.dim_H,
                    "oracle": "" if s.oracle_count is None else s.oracle_count,
                }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=6)
    ap.add_argument("--no-ff", action="store_true", help="skip types with a focus-focus pair")
    ap.add_argument("--csv", help="write the table here instead of printing it")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    table = list(rows(args.n_max, args.d_max, not args.no_ff))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(table[0]))
            w.writeheader()
            w.writerows(table)
    else:
        print(f"{'type':<8}{'k':>3}{'d':>4}{'space':>8}{'dim H':>7}{'oracle':>8}")
        for r in table:
            print(f"{r['type']:<8}{r['k']:>3}{r['d']:>4}{r['dim_space']:>8}{r['dim_H']:>7}{r['oracle']!s:>8}")
    bad = [r for r in table if r["oracle"] != "" and r["oracle"] != r["dim_H"]]
    print(f"{len(table)} slices in {time.perf_counter() - t0:.1f}s, {len(bad)} oracle mismatches", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
