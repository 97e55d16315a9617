"""Recompute (#H, n) for a range of primes and time each stage.

Usage: ``python3 demos/03_reproduce_table.py --p-max 19 --jobs 1``.
Setting ``--p-max 31`` takes about ten minutes on one core.
"""

from __future__ import annotations

import argparse
import multiprocessing
import time

from howessp.howe_search import enumerate_howe
from howessp.pipeline import classify_params

EXPECTED = {5: (9, 1), 7: (0, 0), 11: (87, 4), 13: (126, 3), 17: (288, 10), 19: (174, 4),
            23: (1089, 33), 29: (1575, 45), 31: (2166, 59)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=19)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    pool = multiprocessing.get_context("fork").Pool(args.jobs) if args.jobs > 1 else None
    print("p\t#H\tn\tsearch_s\tclassify_s\texpected")
    for p in sorted(EXPECTED):
        if p > args.p_max:
            break
        t0 = time.perf_counter()
        H = enumerate_howe(p, pool=pool)
        t1 = time.perf_counter()
        if H:
            result, analyses = classify_params(H, pool=pool)
            n = result.n
            levels = sorted({(a.eq_degree, a.vh_degree) for a in analyses})
        else:
            n, levels = 0, []
        t2 = time.perf_counter()
        mark = "ok" if (len(H), n) == EXPECTED[p] else f"MISMATCH {EXPECTED[p]}"
        print(f"{p}\t{len(H)}\t{n}\t{t1 - t0:.1f}\t{t2 - t1:.1f}\t{mark}\tfield degrees {levels}")
    if pool is not None:
        pool.close()


if __name__ == "__main__":
    main()
