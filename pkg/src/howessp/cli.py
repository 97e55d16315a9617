"""Command line interface: ``howessp {catalog,enumerate,classify,table,exists}``.

Exit codes: 0 on success, 2 for invalid arguments (including a p that is
not a prime > 3, or an unreadable record file), 3 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
import time

from .errors import CompositeOrSmallPrime, HoweError, InvariantViolation, SchemaMismatch
from .field_tower import is_prime, make_base_field
from .howe_search import (
    DEFAULT_DISTINCT_J,
    DEFAULT_ORDERED_PAIRS,
    HoweParams,
    enumerate_howe,
    is_howe_type,
    validate_witness,
)
from .cartier_manin import scalar_entries_fast
from .pipeline import classify_params
from .records import RunRecord, dumps_record, read_record, write_record
from .supersingular import catalog_for_prime

__all__ = ["build_parser", "run_cli", "main"]

log = logging.getLogger(__name__)

TABLE_HEADER = "p\tcardH\tn\tt_search\tt_classify"


class _UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if p <= 3 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"p = {p} must be a prime > 3")
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _search_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--ordered-pairs", action="store_true", default=DEFAULT_ORDERED_PAIRS,
                    help="iterate ordered catalog pairs instead of unordered ones")
    sp.add_argument("--distinct-j", action="store_true", default=DEFAULT_DISTINCT_J,
                    help="use one catalog curve per j-invariant instead of one per Legendre root")
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized root finding (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="howessp", description="Superspecial Howe curves of genus 4.")
    parser.add_argument("--log-level", default="WARNING", help="logging level (default WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("catalog", help="supersingular catalog for p as JSON-lines")
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--distinct-j", action="store_true", default=DEFAULT_DISTINCT_J)
    sp.add_argument("--out", help="write to this file instead of stdout")

    sp = sub.add_parser("enumerate", help="list the superspecial Howe-type tuples for p")
    sp.add_argument("--p", type=_prime, required=True)
    _search_flags(sp)
    sp.add_argument("--early-stop", action="store_true", help="stop at the first tuple found")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("classify", help="isomorphism classes of an enumerate output")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--jobs", type=_positive, default=1)

    sp = sub.add_parser("table", help="TSV of (p, cardH, n, timings) over a range of primes")
    sp.add_argument("--p-min", type=int, required=True)
    sp.add_argument("--p-max", type=int, required=True)
    _search_flags(sp)
    sp.add_argument("--jobs", type=_positive, default=1)

    sp = sub.add_parser("exists", help="one validated witness per prime in a range")
    sp.add_argument("--p-min", type=int, required=True)
    sp.add_argument("--p-max", type=int, required=True)
    _search_flags(sp)
    return parser


@contextlib.contextmanager
def _pool(jobs: int):
    if jobs <= 1:
        yield None
        return
    import multiprocessing

    with multiprocessing.get_context("fork").Pool(jobs) as pool:
        yield pool


def _primes_in(lo: int, hi: int) -> list[int]:
    if lo <= 3:
        raise _UsageError(f"--p-min must exceed 3, got {lo}")
    if hi < lo:
        raise _UsageError("--p-max is smaller than --p-min")
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def _report_timings(label: str, timings: dict) -> None:
    print(f"# {label} timings " + json.dumps({k: round(v, 3) for k, v in timings.items()}), file=sys.stderr)


def _search_options(args) -> dict:
    return {
        "ordered_pairs": bool(args.ordered_pairs),
        "distinct_j": bool(args.distinct_j),
        "early_stop": bool(getattr(args, "early_stop", False)),
    }


def _check_tuples(records: list[HoweParams]) -> None:
    for k, hp in enumerate(records):
        if not is_howe_type(hp):
            raise InvariantViolation(f"tuple {k} is not of Howe type")
        if not scalar_entries_fast(hp.A1, hp.B1, hp.A2, hp.B2, hp.lam, hp.mu, hp.nu).is_zero():
            raise InvariantViolation(f"tuple {k} has a nonzero Cartier-Manin matrix")


def cmd_catalog(args) -> int:
    entries = catalog_for_prime(args.p, args.distinct_j)
    rec = RunRecord("catalog", args.p, 0, {"distinct_j": bool(args.distinct_j)}, [e.to_json() for e in entries])
    text = dumps_record(rec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_enumerate(args) -> int:
    t0 = time.perf_counter()
    with _pool(args.jobs) as pool:
        found = enumerate_howe(
            args.p, args.ordered_pairs, args.early_stop, args.seed, pool=pool, distinct_j=args.distinct_j
        )
    t1 = time.perf_counter()
    _check_tuples(found)
    rec = RunRecord("howe-set", args.p, args.seed, _search_options(args), [hp.to_json() for hp in found])
    write_record(args.out, rec)
    _report_timings("enumerate", {"search": t1 - t0, "validate": time.perf_counter() - t1})
    return 0


def _classification_record(src: RunRecord, params: list[HoweParams], pool) -> tuple[RunRecord, float]:
    t0 = time.perf_counter()
    result, analyses = classify_params(params, src.seed, pool)
    labels = result.class_of()
    payload = []
    for k, a in enumerate(analyses):
        item = {"index": k, "class": labels[k]}
        item.update(a.to_json())
        payload.append(item)
    summary = {"cardH": len(params), "n": result.n, "classes": result.classes,
               "representatives": result.representatives}
    return RunRecord("classification", src.p, src.seed, dict(src.options), payload, summary), time.perf_counter() - t0


def cmd_classify(args) -> int:
    src = read_record(args.inp, kind="howe-set")
    ctx = make_base_field(src.p)
    params = [HoweParams.from_json(ctx, d) for d in src.payload]
    with _pool(args.jobs) as pool:
        rec, elapsed = _classification_record(src, params, pool)
    write_record(args.out, rec)
    _report_timings("classify", {"classify": elapsed})
    return 0


def cmd_table(args) -> int:
    primes = _primes_in(args.p_min, args.p_max)
    print(TABLE_HEADER, flush=True)
    with _pool(args.jobs) as pool:
        for p in primes:
            t0 = time.perf_counter()
            found = enumerate_howe(p, args.ordered_pairs, False, args.seed, pool=pool, distinct_j=args.distinct_j)
            t1 = time.perf_counter()
            _check_tuples(found)
            if found:
                src = RunRecord("howe-set", p, args.seed, _search_options(args))
                rec, _ = _classification_record(src, found, pool)
                n = rec.summary["n"]
            else:
                n = 0
            t2 = time.perf_counter()
            print(f"{p}\t{len(found)}\t{n}\t{t1 - t0:.2f}\t{t2 - t1:.2f}", flush=True)
    return 0


def cmd_exists(args) -> int:
    primes = _primes_in(args.p_min, args.p_max)
    failures = []
    for p in primes:
        t0 = time.perf_counter()
        found = enumerate_howe(p, args.ordered_pairs, True, args.seed, distinct_j=args.distinct_j)
        row = {"p": p, "witness": None, "checks": {}}
        if found:
            row["witness"] = found[0].to_json()
            row["checks"] = validate_witness(found[0])
            if not all(row["checks"].values()):
                failures.append(p)
        elif p > 7:
            failures.append(p)
        row["seconds"] = round(time.perf_counter() - t0, 3)
        print(json.dumps(row, sort_keys=True), flush=True)
    if failures:
        raise InvariantViolation(f"no validated witness for p in {failures}")
    return 0


COMMANDS = {
    "catalog": cmd_catalog,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "table": cmd_table,
    "exists": cmd_exists,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (_UsageError, CompositeOrSmallPrime, SchemaMismatch, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"howessp: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, HoweError, AssertionError) as exc:
        print(f"howessp: invariant violation: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
