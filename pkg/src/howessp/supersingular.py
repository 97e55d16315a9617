"""Supersingular j-invariants and one short Weierstrass model for each.

The roots of the Hasse polynomial H_p(t) = sum binom(e, i)^2 t^i, with
e = (p - 1)/2, are the Legendre parameters of supersingular curves.  They
all lie in F_{p^2}, and each j-invariant is taken once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CompositeOrSmallPrime
from .field_tower import FieldCtx, FieldElement, is_prime, make_base_field, make_prime_field
from .unipoly import UniPoly, roots_in_field

__all__ = [
    "SupersingularEntry",
    "hasse_polynomial",
    "build_catalog",
    "build_root_catalog",
    "catalog_for_prime",
    "j_from_legendre",
    "j_from_weierstrass",
    "weierstrass_from_legendre",
    "count_points",
    "has_supersingular_count",
]


@dataclass(frozen=True)
class SupersingularEntry:
    """A supersingular curve y^2 = x^3 + A0 x + B0 with Legendre parameter t0."""

    t0: FieldElement
    j0: FieldElement
    A0: FieldElement
    B0: FieldElement

    def to_json(self) -> dict:
        return {
            "t0": self.t0.to_json(),
            "j0": self.j0.to_json(),
            "A0": self.A0.to_json(),
            "B0": self.B0.to_json(),
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> SupersingularEntry:
        return cls(*(ctx.element(data[k]) for k in ("t0", "j0", "A0", "B0")))


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p <= 3 or not is_prime(p):
        raise CompositeOrSmallPrime(f"need a prime p > 3, got {p!r}")


def hasse_polynomial(p: int) -> UniPoly:
    """H_p(t) over F_p."""
    _check_prime(p)
    e = (p - 1) // 2
    coeffs = []
    b = 1
    for i in range(e + 1):
        coeffs.append(b * b % p)
        # binom(e, i+1) = binom(e, i) (e - i) / (i + 1); i + 1 <= e < p
        b = b * (e - i) * pow(i + 1, -1, p) % p
    return UniPoly(make_prime_field(p), coeffs)


def j_from_legendre(t: FieldElement) -> FieldElement:
    s = t * t - t + 1
    return 256 * s * s * s / (t * t * (t - 1) * (t - 1))


def weierstrass_from_legendre(t: FieldElement) -> tuple[FieldElement, FieldElement]:
    A0 = -(t * t - t + 1) / 3
    B0 = -(2 * t * t * t - 3 * t * t - 3 * t + 2) / 27
    return A0, B0


def j_from_weierstrass(A: FieldElement, B: FieldElement) -> FieldElement:
    a3 = 4 * A * A * A
    return 1728 * a3 / (a3 + 27 * B * B)


def _entry(t0: FieldElement) -> SupersingularEntry:
    A0, B0 = weierstrass_from_legendre(t0)
    return SupersingularEntry(t0, j_from_legendre(t0), A0, B0)


def build_catalog(ctx: FieldCtx) -> list[SupersingularEntry]:
    """One entry per supersingular j-invariant over the base field ``ctx``.

    Roots of H_p are visited in ascending order and the first root reaching a
    new j-invariant is kept.  The result is sorted by j0.
    """
    if ctx.degree != 2:
        raise ValueError("the catalog lives over F_{p^2}")
    seen: dict[FieldElement, SupersingularEntry] = {}
    for t0 in roots_in_field(hasse_polynomial(ctx.p), ctx):
        entry = _entry(t0)
        seen.setdefault(entry.j0, entry)
    return [seen[j] for j in sorted(seen)]


def build_root_catalog(ctx: FieldCtx) -> list[SupersingularEntry]:
    """One entry per root t0 of H_p, sorted by t0 (no j-invariant dedup).

    Roots sharing a j-invariant give twisted Weierstrass models, e.g. t0 and
    1 - t0 give B0 of opposite sign.  Running the search over this list is
    what reproduces the published tuple counts.
    """
    if ctx.degree != 2:
        raise ValueError("the catalog lives over F_{p^2}")
    return [_entry(t0) for t0 in roots_in_field(hasse_polynomial(ctx.p), ctx)]


@lru_cache(maxsize=None)
def _catalog_cached(p: int, distinct_j: bool) -> tuple[SupersingularEntry, ...]:
    ctx = make_base_field(p)
    return tuple(build_catalog(ctx) if distinct_j else build_root_catalog(ctx))


def catalog_for_prime(p: int, distinct_j: bool = True) -> list[SupersingularEntry]:
    """Cached catalog for the base field of p.

    ``distinct_j=False`` returns the per-root list of ``build_root_catalog``.
    """
    _check_prime(p)
    return list(_catalog_cached(p, bool(distinct_j)))


def count_points(A: FieldElement, B: FieldElement, field: FieldCtx | None = None) -> int:
    """#E(k) for y^2 = x^3 + A x + B by summing the quadratic character over k.

    ``field`` defaults to the field of A and B; a prime field is accepted
    only when both coefficients lie in it.
    """
    K = A.ctx
    k = field or K
    if k is not K and (k.degree != 1 or not (A.in_prime_field() and B.in_prime_field())):
        raise ValueError("coefficients do not lie in the counting field")
    a, b = A.code, B.code  # prime-field codes coincide with their F_p values
    add, mul, pw = k.add, k.mul, k.pow
    half = (k.order - 1) // 2
    total = 1  # the point at infinity
    for x in range(k.order):
        r = add(mul(x, add(mul(x, x), a)), b)
        if r == 0:
            total += 1
        elif pw(r, half) == 1:
            total += 2
    return total


def has_supersingular_count(A: FieldElement, B: FieldElement) -> bool:
    """Brute-force supersingularity check by point counting.

    Over F_p the curve must have exactly p + 1 points; a curve needing F_{p^2}
    must have a point count congruent to 1 modulo p.
    """
    p = A.ctx.p
    if A.in_prime_field() and B.in_prime_field():
        return count_points(A, B, make_prime_field(p)) == p + 1
    return count_points(A, B) % p == 1
