"""Cartier-Manin entries of genus-2 curves u^2 = f1(x) f2(x).

With f1 = x^3 + A1 mu^2 x + B1 mu^3 and
f2 = (x - lam)^3 + A2 nu^2 (x - lam) + B2 nu^3, write gamma_i for the
x^i-coefficient of f^e, f = f1 f2 and e = (p - 1)/2.  The entries are
a = gamma_{p-1}, b = gamma_{2p-1}, c = gamma_{p-2} and d = gamma_{2p-2}.

Two evaluation modes exist.  In scalar mode lam is a field element and the
entries are field elements.  In symbolic mode lam is an indeterminate and the
entries are polynomials in lam.  ``batch_lambda_entries`` is the fast
symbolic path used by the search: it evaluates all entries for every mu at
once with numpy matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DegenerateParams
from .field_tower import FieldCtx, FieldElement
from .unipoly import UniPoly, _mul, _trim

__all__ = [
    "LAMBDA",
    "CMEntries",
    "LambdaXPoly",
    "sextic_f",
    "gamma_coeffs",
    "cm_entries",
    "cm_targets",
    "batch_lambda_entries",
    "scalar_entries_fast",
]

#: marker passed as ``lam`` to request symbolic mode
LAMBDA = "lambda"


def cm_targets(p: int) -> tuple[int, int, int, int]:
    """Exponents of (a, b, c, d)."""
    return (p - 1, 2 * p - 1, p - 2, 2 * p - 2)


@dataclass(frozen=True)
class CMEntries:
    a: object
    b: object
    c: object
    d: object
    mode: str  # "scalar" or "symbolic"

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.as_tuple())

    def specialize(self, lam: FieldElement) -> CMEntries:
        if self.mode != "symbolic":
            raise ValueError("only symbolic entries can be specialized")
        return CMEntries(*(v(lam) for v in self.as_tuple()), mode="scalar")


class LambdaXPoly:
    """Polynomial in x whose coefficients are polynomials in lam.

    ``coeffs[i]`` is the coefficient of x^i as a ``UniPoly`` in lam.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: LambdaXPoly) -> LambdaXPoly:
        ctx = self.ctx
        zero = UniPoly(ctx)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u.is_zero():
                continue
            for j, v in enumerate(other.coeffs):
                if not v.is_zero():
                    out[i + j] = out[i + j] + u * v
        return LambdaXPoly(ctx, out)

    def __pow__(self, k: int) -> LambdaXPoly:
        result = LambdaXPoly(self.ctx, [UniPoly(self.ctx, [1])])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def coefficient(self, i: int) -> UniPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return UniPoly(self.ctx)

    def specialize(self, lam: FieldElement) -> UniPoly:
        return UniPoly(self.ctx, [c(lam) for c in self.coeffs])


def sextic_f(A1, B1, A2, B2, mu, nu, lam):
    """f1 * f2 as a ``UniPoly`` in x, or a ``LambdaXPoly`` when lam is ``LAMBDA``."""
    ctx = A1.ctx
    if mu.is_zero() or nu.is_zero():
        raise DegenerateParams("mu and nu must be nonzero")
    f1 = UniPoly(ctx, [B1 * mu * mu * mu, A1 * mu * mu, 0, 1])
    mu2 = A2 * nu * nu
    nu3 = B2 * nu * nu * nu
    if isinstance(lam, str):
        if lam != LAMBDA:
            raise ValueError(f"unknown symbolic marker {lam!r}")
        L = UniPoly.x(ctx)
        # (x - L)^3 + mu2 (x - L) + nu3 grouped by powers of x
        f2 = [
            -(L * L * L) - L * mu2 + nu3,
            L * L * 3 + mu2,
            L * -3,
            UniPoly(ctx, [1]),
        ]
        f1x = [UniPoly(ctx, [c]) for c in f1.coeffs]
        return LambdaXPoly(ctx, f1x) * LambdaXPoly(ctx, f2)
    f2 = UniPoly(ctx, [-(lam * lam * lam) - mu2 * lam + nu3, 3 * lam * lam + mu2, -3 * lam, 1])
    return f1 * f2


def gamma_coeffs(f, p: int, targets) -> list:
    """Coefficients of f^((p-1)/2) at the exponents in ``targets``.

    ``f`` may be a ``UniPoly`` (result: field elements) or a ``LambdaXPoly``
    (result: polynomials in lam).  The power is taken by binary powering.
    """
    e = (p - 1) // 2
    if isinstance(f, LambdaXPoly):
        F = f ** e
        return [F.coefficient(n) for n in targets]
    F = f ** e
    zero = FieldElement(f.ctx, 0)
    return [F.coeffs[n] if 0 <= n <= F.degree else zero for n in targets]


def cm_entries(f, p: int) -> CMEntries:
    mode = "symbolic" if isinstance(f, LambdaXPoly) else "scalar"
    return CMEntries(*gamma_coeffs(f, p, cm_targets(p)), mode=mode)


# --- vectorized symbolic entries ------------------------------------------------------

def _split(ctx: FieldCtx, codes) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(codes, dtype=np.int64)
    return arr % ctx.p, arr // ctx.p


def _matmul_fp2(ctx: FieldCtx, U, V):
    """Product of matrices over F_{p^2} given as (component0, component1) pairs."""
    p = ctx.p
    m0, m1 = ctx.modulus[0], ctx.modulus[1]
    U0, U1 = U
    V0, V1 = V
    P0 = (U0 @ V0) % p
    P1 = (U0 @ V1 + U1 @ V0) % p
    P2 = (U1 @ V1) % p
    # g^2 = -m1 g - m0
    return (P0 - m0 * P2) % p, (P1 - m1 * P2) % p


def batch_lambda_entries(A1, B1, A2, B2, mus=None) -> dict[int, CMEntries]:
    """Symbolic CM entries (nu = 1) for every mu, keyed by the code of mu.

    Let G1 = g1^e with g1 = x^3 + A1 x + B1 and G2 = g2^e = sum c_k x^k.
    Since f1 = mu^3 g1(x/mu) and f2 = g2(x - lam),
    f1^e = sum_i s_i mu^(3e-i) x^i and the x^m-coefficient of f2^e is
    h_m(lam) = sum_j c_(m+j) binom(m+j, m) (-lam)^j.
    Hence gamma_n = sum_i s_i mu^(3e-i) h_(n-i)(lam), a matrix product over
    all mu at once.
    """
    ctx = A1.ctx
    if ctx.degree != 2:
        raise ValueError("the batch path works over F_{p^2}")
    p = ctx.p
    e = (p - 1) // 2
    N = 3 * e
    G1 = UniPoly(ctx, [B1, A1, 0, 1]) ** e
    G2 = UniPoly(ctx, [B2, A2, 0, 1]) ** e
    s = G1.c + [0] * (N + 1 - len(G1.c))
    cc = G2.c + [0] * (N + 1 - len(G2.c))
    mul, neg = ctx.mul, ctx.neg
    H = [[0] * (N + 1) for _ in range(N + 1)]
    for m in range(N + 1):
        for j in range(N + 1 - m):
            v = mul(cc[m + j], comb(m + j, m) % p)
            H[m][j] = neg(v) if j & 1 else v
    if mus is None:
        mus = list(range(1, ctx.order))
    else:
        mus = [m.code if isinstance(m, FieldElement) else int(m) for m in mus]
    if any(m == 0 for m in mus):
        raise DegenerateParams("mu must be nonzero")
    W = []
    for m in mus:
        row = [0] * (N + 1)
        acc = 1
        for k in range(N + 1):
            row[N - k] = acc  # mu^(3e-i) at column i = N - k
            acc = mul(acc, m)
        W.append(row)
    Wc = _split(ctx, W)
    polys = []
    for n in cm_targets(p):
        M = [[0] * (N + 1) for _ in range(N + 1)]
        for i in range(N + 1):
            r = n - i
            if 0 <= r <= N and s[i]:
                Hr = H[r]
                M[i] = [mul(s[i], h) for h in Hr]
        R0, R1 = _matmul_fp2(ctx, Wc, _split(ctx, M))
        polys.append((R0 + R1 * p).tolist())
    out = {}
    for idx, m in enumerate(mus):
        out[m] = CMEntries(
            *(UniPoly.from_codes(ctx, _trim(list(P[idx]))) for P in polys), mode="symbolic"
        )
    return out


def scalar_entries_fast(A1, B1, A2, B2, lam, mu, nu=None) -> CMEntries:
    """Scalar entries via f^e = f1^e f2^e (used by the brute-force oracle)."""
    ctx = A1.ctx
    p = ctx.p
    e = (p - 1) // 2
    nu = ctx.one() if nu is None else nu
    if mu.is_zero() or nu.is_zero():
        raise DegenerateParams("mu and nu must be nonzero")
    f1 = UniPoly(ctx, [B1 * mu * mu * mu, A1 * mu * mu, 0, 1])
    mu2 = A2 * nu * nu
    f2 = UniPoly(ctx, [-(lam * lam * lam) - mu2 * lam + B2 * nu * nu * nu, 3 * lam * lam + mu2, -3 * lam, 1])
    F = _mul(ctx, (f1 ** e).c, (f2 ** e).c)
    vals = [FieldElement(ctx, F[n] if n < len(F) else 0) for n in cm_targets(p)]
    return CMEntries(*vals, mode="scalar")
