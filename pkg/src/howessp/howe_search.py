"""Search for superspecial curves of Howe type.

For each pair of catalog curves and each mu in F_{p^2}^x (nu = 1) the
Cartier-Manin entries are polynomials in lam; their common roots in F_{p^2}
are the lam giving a superspecial genus-2 curve u^2 = f1 f2.  Tuples whose
cubics f1, f2 share a root are then discarded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .cartier_manin import batch_lambda_entries, scalar_entries_fast
from .errors import CompositeOrSmallPrime
from .field_tower import FieldCtx, FieldElement, is_prime, make_base_field
from .supersingular import SupersingularEntry, catalog_for_prime
from .unipoly import UniPoly, _gcd, resultant, roots_in_field

__all__ = [
    "HoweParams",
    "DEFAULT_ORDERED_PAIRS",
    "catalog_pairs",
    "solve_lambda_mu",
    "solve_lambda_mu_for_mus",
    "brute_force_lambda_mu",
    "is_howe_type",
    "validate_witness",
    "enumerate_howe",
    "enumerate",
]

log = logging.getLogger(__name__)

#: pair convention reproducing the published counts (unordered, diagonal included)
DEFAULT_ORDERED_PAIRS = False
#: catalog convention reproducing the published counts (one entry per root of H_p)
DEFAULT_DISTINCT_J = False

FIELDS = ("A1", "B1", "A2", "B2", "lam", "mu", "nu")


@dataclass(frozen=True)
class HoweParams:
    """Parameters (A1, B1, A2, B2, lam, mu, nu) over F_{p^2}."""

    A1: FieldElement
    B1: FieldElement
    A2: FieldElement
    B2: FieldElement
    lam: FieldElement
    mu: FieldElement
    nu: FieldElement

    @property
    def ctx(self) -> FieldCtx:
        return self.A1.ctx

    def values(self) -> tuple[FieldElement, ...]:
        return tuple(getattr(self, k) for k in FIELDS)

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(v.to_json() for v in self.values())

    def f1(self) -> UniPoly:
        mu = self.mu
        return UniPoly(self.ctx, [self.B1 * mu * mu * mu, self.A1 * mu * mu, 0, 1])

    def f2(self) -> UniPoly:
        lam, nu = self.lam, self.nu
        a = self.A2 * nu * nu
        b = self.B2 * nu * nu * nu
        return UniPoly(self.ctx, [-(lam * lam * lam) - a * lam + b, 3 * lam * lam + a, -3 * lam, 1])

    def scaled(self, c: FieldElement) -> HoweParams:
        """The tuple (c lam, c mu, c nu) describing an isomorphic curve."""
        return HoweParams(self.A1, self.B1, self.A2, self.B2, c * self.lam, c * self.mu, c * self.nu)

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in FIELDS}

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> HoweParams:
        return cls(*(ctx.element(data[k]) for k in FIELDS))


def catalog_pairs(catalog: list[SupersingularEntry], ordered: bool = DEFAULT_ORDERED_PAIRS):
    """Index pairs (i, j) of catalog entries, diagonal included."""
    n = len(catalog)
    if ordered:
        return [(i, j) for i in range(n) for j in range(n)]
    return [(i, j) for i in range(n) for j in range(i, n)]


def solve_lambda_mu_for_mus(pair, ctx: FieldCtx, mus, seed: int = 0) -> set[tuple[FieldElement, FieldElement]]:
    """Solutions (lam, mu) of vanishing CM entries restricted to the given mu."""
    E1, E2 = pair
    entries = batch_lambda_entries(E1.A0, E1.B0, E2.A0, E2.B0, mus)
    out = set()
    for mcode, cm in entries.items():
        mu = FieldElement(ctx, mcode)
        # the low-degree entries b and d first keep the gcd cheap
        G: list[int] = []
        for poly in (cm.b, cm.d, cm.a, cm.c):
            G = _gcd(ctx, G, poly.c)
            if len(G) == 1:
                break
        if len(G) == 1:
            continue
        if not G:
            lams = list(ctx.elements())
        else:
            lams = roots_in_field(UniPoly.from_codes(ctx, G), ctx, seed=seed)
        for lam in lams:
            out.add((lam, mu))
    return out


def solve_lambda_mu(pair, ctx: FieldCtx, seed: int = 0) -> set[tuple[FieldElement, FieldElement]]:
    """All (lam, mu), mu != 0, with vanishing Cartier-Manin matrix (nu = 1)."""
    return solve_lambda_mu_for_mus(pair, ctx, range(1, ctx.order), seed)


def brute_force_lambda_mu(pair, ctx: FieldCtx) -> set[tuple[FieldElement, FieldElement]]:
    """Reference solution by scalar evaluation at every (lam, mu)."""
    E1, E2 = pair
    out = set()
    elems = list(ctx.elements())
    for mu in elems:
        if mu.is_zero():
            continue
        for lam in elems:
            if scalar_entries_fast(E1.A0, E1.B0, E2.A0, E2.B0, lam, mu).is_zero():
                out.add((lam, mu))
    return out


def is_howe_type(params: HoweParams) -> bool:
    if params.mu.is_zero() or params.nu.is_zero():
        return False
    return not resultant(params.f1(), params.f2()).is_zero()


def validate_witness(params: HoweParams) -> dict[str, bool]:
    """Independent checks of one tuple: point counts, Cartier-Manin matrix, coprimality.

    The Cartier-Manin entries are recomputed by plain binary powering of the
    sextic, not by the fast product used during the search.
    """
    from .cartier_manin import cm_entries, sextic_f
    from .supersingular import has_supersingular_count

    mu, nu = params.mu, params.nu
    f = sextic_f(params.A1, params.B1, params.A2, params.B2, mu, nu, params.lam)
    return {
        "E1_supersingular": has_supersingular_count(params.A1 * mu * mu, params.B1 * mu * mu * mu),
        "E2_supersingular": has_supersingular_count(params.A2 * nu * nu, params.B2 * nu * nu * nu),
        "cartier_manin_zero": cm_entries(f, params.ctx.p).is_zero(),
        "resultant_nonzero": not resultant(params.f1(), params.f2()).is_zero(),
    }


def _check_prime(p) -> None:
    if not isinstance(p, int) or p <= 3 or not is_prime(p):
        raise CompositeOrSmallPrime(f"need a prime p > 3, got {p!r}")


def work_items(
    p: int,
    ordered_pairs: bool = DEFAULT_ORDERED_PAIRS,
    chunk: int | None = None,
    distinct_j: bool = DEFAULT_DISTINCT_J,
):
    """Independent (p, i, j, mu-codes, distinct_j) work items in canonical order."""
    ctx = make_base_field(p)
    catalog = catalog_for_prime(p, distinct_j)
    chunk = chunk or ctx.order
    items = []
    for i, j in catalog_pairs(catalog, ordered_pairs):
        for start in range(1, ctx.order, chunk):
            mus = tuple(range(start, min(start + chunk, ctx.order)))
            items.append((p, i, j, mus, distinct_j))
    return items


def run_item(item, seed: int = 0) -> list[HoweParams]:
    p, i, j, mus, distinct_j = item
    ctx = make_base_field(p)
    catalog = catalog_for_prime(p, distinct_j)
    E1, E2 = catalog[i], catalog[j]
    one = ctx.one()
    out = []
    for lam, mu in solve_lambda_mu_for_mus((E1, E2), ctx, mus, seed):
        hp = HoweParams(E1.A0, E1.B0, E2.A0, E2.B0, lam, mu, one)
        if is_howe_type(hp):
            out.append(hp)
    out.sort(key=HoweParams.sort_key)
    return out


def enumerate_howe(
    p: int,
    ordered_pairs: bool = DEFAULT_ORDERED_PAIRS,
    early_stop: bool = False,
    seed: int = 0,
    pool=None,
    distinct_j: bool = DEFAULT_DISTINCT_J,
) -> list[HoweParams]:
    """The superspecial Howe-type tuples for p in canonical order.

    With ``early_stop`` at most one tuple is returned (the canonically least
    one of the first work item that yields anything).  ``pool`` may be any
    object with an ordered ``map(fn, items)``.
    """
    _check_prime(p)
    if early_stop:
        ctx = make_base_field(p)
        for item in work_items(p, ordered_pairs, max(1, ctx.order // 16), distinct_j):
            found = run_item(item, seed)
            if found:
                return found[:1]
        return []
    items = work_items(p, ordered_pairs, distinct_j=distinct_j)
    if pool is None:
        results = [run_item(it, seed) for it in items]
    else:
        from functools import partial

        results = pool.map(partial(run_item, seed=seed), items)
    out = [hp for r in results for hp in r]
    out.sort(key=HoweParams.sort_key)
    return out


# the name used by the command line and the documentation
enumerate = enumerate_howe
