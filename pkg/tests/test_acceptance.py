"""End-to-end acceptance checks, one test per criterion.

Every test records a one-line verdict in ``helpers.ACCEPTANCE_LINES``; the
lines are printed in a separate section at the end of the pytest run.
The optional tier (p = 29, 31) runs by default and takes roughly ten
minutes; set HOWESSP_SKIP_OPTIONAL=1 to skip it.
"""

from __future__ import annotations

import os
import random
import time
from collections import Counter

import pytest

from howessp.cartier_manin import batch_lambda_entries, gamma_coeffs
from howessp.cli import run_cli
from howessp.elliptic_quotients import case_system
from howessp.canonical_model import canonical
from howessp.errors import NotZeroDimensional
from howessp.field_tower import make_base_field, make_field, make_prime_field
from howessp.howe_search import (
    brute_force_lambda_mu,
    catalog_pairs,
    enumerate_howe,
    is_howe_type,
    solve_lambda_mu,
    validate_witness,
)
from howessp.isomorphism import RamTuple, affine_key, arrangements, classify, rank_test
from howessp.multipoly import MultiPoly, buchberger, is_groebner_basis, lex_basis, solve_zero_dimensional
from howessp.pipeline import analyze_record, classify_params
from howessp.supersingular import catalog_for_prime, hasse_polynomial
from howessp.unipoly import UniPoly, factor, gcd_monic

from helpers import ACCEPTANCE_LINES, analyses, howe_set

TABLE = {5: (9, 1), 7: (0, 0), 11: (87, 4), 13: (126, 3), 17: (288, 10), 19: (174, 4), 23: (1089, 33)}
OPTIONAL_TABLE = {29: (1575, 45), 31: (2166, 59)}


def _record(cid: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[cid] = f"CRITERION {cid}: {'PASS' if ok else 'FAIL'} {detail}"


def _table_row(p):
    t0 = time.perf_counter()
    found = enumerate_howe(p)
    n = classify_params(found)[0].n if found else 0
    return (len(found), n), time.perf_counter() - t0


# --- 1, 2: table reproduction ------------------------------------------------------


@pytest.mark.slow
@pytest.mark.parametrize("p", sorted(TABLE))
def test_criterion_1_table(p):
    got, secs = _table_row(p)
    ok = got == TABLE[p] and secs <= 15 * 60
    _record(f"1 p={p}", ok, f"(#H, n) = {got}, expected {TABLE[p]}, {secs:.1f}s (limit 900s)")
    assert got == TABLE[p]
    assert secs <= 15 * 60


@pytest.mark.slow
@pytest.mark.optional
@pytest.mark.parametrize("p", sorted(OPTIONAL_TABLE))
def test_criterion_2_optional_tier(p):
    if os.environ.get("HOWESSP_SKIP_OPTIONAL") == "1":
        ACCEPTANCE_LINES[f"2 p={p}"] = f"CRITERION 2 p={p}: SKIPPED (HOWESSP_SKIP_OPTIONAL=1)"
        pytest.skip("optional tier disabled")
    got, secs = _table_row(p)
    ok = got == OPTIONAL_TABLE[p] and secs <= 3600
    _record(f"2 p={p}", ok, f"(#H, n) = {got}, expected {OPTIONAL_TABLE[p]}, {secs:.1f}s (limit 3600s)")
    assert got == OPTIONAL_TABLE[p]
    assert secs <= 3600


# --- 3: existence sweep -------------------------------------------------------------


def _brute_count(A, B, k):
    """Points of y^2 = x^3 + A x + B over k, by tabulating all squares."""
    squares = Counter(k.mul(y, y) for y in range(k.order))
    a, b = A.code, B.code
    total = 1
    for x in range(k.order):
        total += squares[k.add(k.mul(x, k.add(k.mul(x, x), a)), b)]
    return total


def _supersingular_by_count(A, B):
    p = A.ctx.p
    if A.in_prime_field() and B.in_prime_field():
        return _brute_count(A, B, make_prime_field(p)) == p + 1
    # not defined over F_p: count over F_{p^2} instead (see the decisions ledger)
    return _brute_count(A, B, A.ctx) % p == 1


def _primes(lo, hi):
    return [n for n in range(lo, hi + 1) if n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))]


@pytest.mark.slow
def test_criterion_3_existence_sweep():
    t0 = time.perf_counter()
    failures = []
    primes = _primes(8, 100)
    for p in primes:
        found = enumerate_howe(p, early_stop=True)
        if not found:
            failures.append((p, "no witness"))
            continue
        hp = found[0]
        mu, nu = hp.mu, hp.nu
        checks = validate_witness(hp)
        checks["E1_brute"] = _supersingular_by_count(hp.A1 * mu * mu, hp.B1 * mu * mu * mu)
        checks["E2_brute"] = _supersingular_by_count(hp.A2 * nu * nu, hp.B2 * nu * nu * nu)
        bad = [k for k, v in checks.items() if not v]
        if bad:
            failures.append((p, bad))
    secs = time.perf_counter() - t0
    ok = not failures and secs <= 30 * 60
    _record("3", ok, f"{len(primes) - len(failures)}/{len(primes)} primes in (7, 100] validated, "
                     f"{secs:.1f}s (limit 1800s) {failures or ''}".rstrip())
    assert not failures
    assert secs <= 30 * 60


# --- 4: EQ cardinality -------------------------------------------------------------


def test_criterion_4_eq_count_p5():
    counts = sorted({a.eq_count for a in analyses(5)})
    n = classify([a.ram_tuples() for a in analyses(5)]).n
    ok = counts == [10] and n == 1
    _record("4", ok, f"#EQ over the p=5 class = {counts}, classes = {n}")
    assert n == 1
    assert counts == [10]


# --- 5: brute force against gcd-based solving ---------------------------------------


@pytest.mark.slow
def test_criterion_5_oracle_equivalence():
    mismatches = []
    total = 0
    for p in (5, 11):
        K = make_base_field(p)
        cat = catalog_for_prime(p, distinct_j=False)
        for i, j in catalog_pairs(cat, ordered=True):
            pair = (cat[i], cat[j])
            total += 1
            if solve_lambda_mu(pair, K) != brute_force_lambda_mu(pair, K):
                mismatches.append((p, i, j))
    _record("5", not mismatches, f"{total - len(mismatches)}/{total} catalog pairs agree at p in {{5, 11}}")
    assert not mismatches


# --- 6: Legendre form against the Hasse polynomial ----------------------------------


def test_criterion_6_legendre_hasse():
    mismatches = []
    checked = 0
    for p in _primes(5, 31):
        F = make_prime_field(p)
        H = hasse_polynomial(p)
        for t in range(2, p):
            cubic = UniPoly.from_codes(F, [0, t, F.sub(0, t + 1), 1])  # x (x - 1) (x - t)
            (g,) = gamma_coeffs(cubic, p, [p - 1])
            checked += 1
            if g.is_zero() != H(F.element(t)).is_zero():
                mismatches.append((p, t))
    _record("6", not mismatches, f"{checked} Legendre parameters for 5 <= p <= 31, {len(mismatches)} mismatches")
    assert not mismatches


# --- 7: lambda-degree bounds of the Cartier-Manin entries ----------------------------


@pytest.mark.slow
def test_criterion_7_degree_bounds():
    violations = []
    checked = 0
    for p in (11, 13, 17, 19, 23):
        bounds = ((3 * p - 5) // 2, (p - 5) // 2, (3 * p - 3) // 2, (p - 3) // 2)
        cat = catalog_for_prime(p, distinct_j=False)
        for E1 in cat:
            for E2 in cat:
                for mu, ent in batch_lambda_entries(E1.A0, E1.B0, E2.A0, E2.B0).items():
                    checked += 1
                    degs = tuple(v.degree for v in ent.as_tuple())
                    if any(d > b for d, b in zip(degs, bounds)):
                        violations.append((p, E1.t0.code, E2.t0.code, mu, degs))
    _record("7", not violations, f"{checked} (pair, mu) entry sets at p in 11..23, {len(violations)} violations")
    assert not violations


# --- 8: scaling invariance ---------------------------------------------------------


@pytest.mark.slow
def test_criterion_8_scaling_invariance():
    rng = random.Random(2024)
    passed = total = 0
    failures = []
    for p in (11, 13):
        K = make_base_field(p)
        H = howe_set(p)
        for _ in range(50):
            hp = rng.choice(H)
            c = K.from_code(rng.randrange(1, K.order))
            scaled = hp.scaled(c)
            total += 1
            same = is_howe_type(scaled) and classify(
                [analyze_record(hp).ram_tuples(), analyze_record(scaled).ram_tuples()]
            ).n == 1
            if same:
                passed += 1
            else:
                failures.append((p, c.code))
    _record("8", passed == total, f"{passed}/{total} scaled models isomorphic at p in {{11, 13}}")
    assert not failures


# --- 9: property suites ------------------------------------------------------------


def _irreducible(g: UniPoly) -> bool:
    """Rabin's test, written against polynomial arithmetic only."""
    d = g.degree
    q = g.ctx.order
    x = UniPoly.x(g.ctx)

    def frob(k):
        h = x % g
        for _ in range(k):
            h = h.powmod(q, g)
        return h

    if (frob(d) - x) % g != UniPoly(g.ctx):
        return False
    for r in {r for r in range(2, d + 1) if d % r == 0 and all(r % s for s in range(2, r))}:
        if gcd_monic(frob(d // r) - x, g).degree != 0:
            return False
    return True


def _factor_round_trip(ctx, count, rng):
    bad = 0
    for _ in range(count):
        deg = rng.randrange(1, 31)
        f = UniPoly.from_codes(ctx, [ctx.random_code(rng) for _ in range(deg)] + [rng.randrange(1, ctx.order)])
        fac = factor(f, seed=rng.randrange(1 << 30))
        prod = UniPoly(ctx, [f.lc()])
        for g, k in fac:
            prod = prod * g ** k
        ok = prod == f
        ok = ok and len({tuple(g.c) for g, _ in fac}) == len(fac)
        ok = ok and all(g.is_monic() and _irreducible(g) for g, _ in fac)
        bad += not ok
    return bad


@pytest.mark.slow
def test_criterion_9a_factorization_round_trip():
    rng = random.Random(9)
    fields = [make_base_field(11), make_field(11, 4)]
    bad = sum(_factor_round_trip(K, 200, rng) for K in fields)
    _record("9a", bad == 0, f"factorization round trip: 400 polynomials of degree <= 30 over "
                            f"F_(11^2) and F_(11^4), {bad} failures")
    assert bad == 0


def _random_ideal(ctx, vars, rng):
    out = []
    for _ in range(len(vars)):
        terms = {}
        for _ in range(4):
            m = tuple(rng.randrange(0, 3) for _ in vars)
            if sum(m) <= 2:
                terms[m] = rng.randrange(1, ctx.order)
        out.append(MultiPoly(ctx, vars, terms))
    return out


def _gb_and_variety_systems():
    """Case systems of real curves plus random small ideals."""
    systems = []
    for p, ks in ((5, (0, 4)), (11, (0, 27, 60)), (13, (3,))):
        for k in ks:
            m = canonical(howe_set(p)[k])
            for tag in "ABCD":
                systems.append(case_system(m.Q, m.P, tag)[0])
    rng = random.Random(10)
    K = make_base_field(7)
    while len(systems) < 58:
        gens = _random_ideal(K, ("x", "y", "z"), rng)
        try:
            lex_basis(gens)
        except NotZeroDimensional:
            continue
        systems.append(gens)
    return systems


@pytest.mark.slow
def test_criterion_9b_groebner_self_verification():
    bases = 0
    bad = 0
    for gens in _gb_and_variety_systems():
        for G, order in ((lex_basis(gens), "lex"), (buchberger(gens, "grevlex"), "grevlex")):
            bases += 1
            bad += not is_groebner_basis(G, order)
    _record("9b", bad == 0, f"Groebner self-verification: {bases} bases, {bad} with a nonzero S-polynomial remainder")
    assert bad == 0


@pytest.mark.slow
def test_criterion_9c_variety_points():
    points = 0
    bad = 0
    systems = 0
    for gens in _gb_and_variety_systems():
        G = lex_basis(gens)
        if len(G) == 1 and G[0].total_degree() == 0:
            continue
        sols, K = solve_zero_dimensional(gens)
        systems += 1
        for pt in sols:
            points += 1
            bad += not all(g.embed(K).evaluate(pt.coords).is_zero() for g in gens)
    _record("9c", bad == 0 and points > 0,
            f"variety substitution: {points} points from {systems} systems, {bad} failures")
    assert points > 0
    assert bad == 0


def test_criterion_9d_rank_test_affine_invariance():
    rng = random.Random(11)
    pools = [a.ram_tuples() for p in (11, 13) for a in analyses(p)]
    bad = 0
    for _ in range(1000):
        t = rng.choice(rng.choice(pools))
        L = t.ctx
        alpha = rng.randrange(1, L.order)
        beta = rng.randrange(L.order)
        image = tuple(L.add(L.mul(alpha, c), beta) for c in t.roots)
        # permute within each triple and possibly swap the triples
        moved = RamTuple(L, rng.choice(arrangements(image)))
        ok = rank_test(t, moved) and rank_test(moved, t)
        ok = ok and affine_key(L, t.roots) in {affine_key(L, arr) for arr in arrangements(moved.roots)}
        bad += not ok
    _record("9d", bad == 0, f"rank test under 1000 random affine maps and permutations, {bad} failures")
    assert bad == 0


@pytest.mark.slow
def test_criterion_9e_jobs_determinism(tmp_path):
    mismatches = []
    for p in (11, 13):
        blobs = {}
        for jobs in (1, 4):
            h = tmp_path / f"h{p}_{jobs}.jsonl"
            c = tmp_path / f"c{p}_{jobs}.jsonl"
            assert run_cli(["enumerate", "--p", str(p), "--jobs", str(jobs), "--out", str(h)]) == 0
            assert run_cli(["classify", "--in", str(h), "--out", str(c), "--jobs", str(jobs)]) == 0
            blobs[jobs] = (h.read_bytes(), c.read_bytes())
        if blobs[1] != blobs[4]:
            mismatches.append(p)
    _record("9e", not mismatches, f"enumerate and classify outputs byte-identical for --jobs 1 and 4 "
                                  f"at p in {{11, 13}} {mismatches or ''}".rstrip())
    assert not mismatches
