"""Canonical genus-4 model V(Q, P) in P^3 of a Howe curve.

With the homogenized cubics f1h, f2h the curve is cut out by
Q = z^2 - w^2 - q(x, y) and P = z^2 y - f1h(x, y), where
q = (f1h - f2h)/y is a binary quadratic form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotHoweType
from .howe_search import HoweParams, is_howe_type
from .multipoly import MultiPoly

__all__ = ["CanonicalModel", "q_form", "canonical", "homogenized_cubics", "VARS"]

VARS = ("x", "y", "z", "w")


@dataclass(frozen=True)
class CanonicalModel:
    Q: MultiPoly
    P: MultiPoly
    params: HoweParams

    @property
    def ctx(self):
        return self.Q.ctx


def homogenized_cubics(params: HoweParams, vars=("x", "y")) -> tuple[MultiPoly, MultiPoly]:
    """f1h and f2h as forms in the first two names of ``vars``."""
    ctx = params.ctx
    gens = [MultiPoly.var(ctx, vars, v) for v in vars]
    x, y = gens[0], gens[1]
    A1, B1, A2, B2 = params.A1, params.B1, params.A2, params.B2
    lam, mu, nu = params.lam, params.mu, params.nu
    f1 = x ** 3 + x * y * y * (A1 * mu * mu) + y ** 3 * (B1 * mu ** 3)
    t = x - y * lam
    f2 = t ** 3 + t * y * y * (A2 * nu * nu) + y ** 3 * (B2 * nu ** 3)
    return f1, f2


def q_form(params: HoweParams, vars=("x", "y")) -> MultiPoly:
    """q(x, y) = 3 lam x^2 + (A1 mu^2 - A2 nu^2 - 3 lam^2) x y + (B1 mu^3 - B2 nu^3 + lam^3 + A2 nu^2 lam) y^2."""
    A1, B1, A2, B2 = params.A1, params.B1, params.A2, params.B2
    lam, mu, nu = params.lam, params.mu, params.nu
    ctx = params.ctx
    n = len(vars)

    def mono(i, j):
        m = [0] * n
        m[0], m[1] = i, j
        return tuple(m)

    return MultiPoly(
        ctx,
        vars,
        {
            mono(2, 0): 3 * lam,
            mono(1, 1): A1 * mu * mu - A2 * nu * nu - 3 * lam * lam,
            mono(0, 2): B1 * mu ** 3 - B2 * nu ** 3 + lam ** 3 + A2 * nu * nu * lam,
        },
    )


def canonical(params: HoweParams) -> CanonicalModel:
    if not is_howe_type(params):
        raise NotHoweType("parameters are not of Howe type")
    ctx = params.ctx
    x, y, z, w = (MultiPoly.var(ctx, VARS, v) for v in VARS)
    f1, _ = homogenized_cubics(params, VARS)
    Q = z * z - w * w - q_form(params, VARS)
    P = z * z * y - f1
    return CanonicalModel(Q, P, params)
