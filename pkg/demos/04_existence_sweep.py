"""Find one validated superspecial Howe curve for every prime in a range.

Usage: ``python3 demos/04_existence_sweep.py --p-max 100``.
Each witness is checked for supersingular point counts on both elliptic
curves, a zero Cartier-Manin matrix, and coprime cubics.
"""

from __future__ import annotations

import argparse
import time

from howessp.field_tower import is_prime
from howessp.howe_search import enumerate_howe, validate_witness


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-min", type=int, default=5)
    ap.add_argument("--p-max", type=int, default=100)
    args = ap.parse_args()

    for p in range(max(args.p_min, 5), args.p_max + 1):
        if not is_prime(p):
            continue
        t0 = time.perf_counter()
        found = enumerate_howe(p, early_stop=True)
        secs = time.perf_counter() - t0
        if not found:
            print(f"p={p:4d}  no superspecial Howe curve ({secs:.2f}s)")
            continue
        hp = found[0]
        checks = validate_witness(hp)
        status = "validated" if all(checks.values()) else f"FAILED {checks}"
        print(f"p={p:4d}  lam={hp.lam}  mu={hp.mu}  {status} ({secs:.2f}s)")


if __name__ == "__main__":
    main()
