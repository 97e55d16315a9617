"""Dense univariate polynomials over a ``FieldCtx``.

Coefficients are stored little-endian as field codes; the list is trimmed so
the last entry is nonzero (the zero polynomial is ``[]``).  The low-level
``_``-prefixed helpers act directly on such lists and are what the hot loops
elsewhere in the package call.
"""

from __future__ import annotations

import random
from collections import Counter

from .errors import MixedContexts, ZeroPolynomial
from .field_tower import FieldCtx, FieldElement, embedding

__all__ = [
    "UniPoly",
    "gcd_monic",
    "resultant",
    "factor",
    "squarefree_factorization",
    "distinct_degree_factorization",
    "equal_degree_factorization",
    "roots_in_field",
]

DEFAULT_SEED = 0


# --- list-level helpers ---------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(ctx, a, b):
    add = ctx.add
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = add(out[i], y)
    return _trim(out)


def _sub(ctx, a, b):
    sub = ctx.sub
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, y in enumerate(b):
        out[i] = sub(out[i], y)
    return _trim(out)


def _scale(ctx, a, c):
    if c == 0:
        return []
    mul = ctx.mul
    return [mul(x, c) for x in a]


def _mul(ctx, a, b):
    if not a or not b:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _divmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    sub, mul = ctx.sub, ctx.mul
    inv_lc = ctx.inv(b[-1])
    r = list(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul(c, inv_lc)
            q[i - db] = c
            base = i - db
            for j in range(db):
                if b[j]:
                    r[base + j] = sub(r[base + j], mul(c, b[j]))
            r[i] = 0
    return _trim(q), _trim(r[:db])


def _mod(ctx, a, b):
    db = len(b) - 1
    if len(a) - 1 < db:
        return list(a)
    sub, mul = ctx.sub, ctx.mul
    inv_lc = ctx.inv(b[-1])
    r = list(a)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul(c, inv_lc)
            base = i - db
            for j in range(db):
                if b[j]:
                    r[base + j] = sub(r[base + j], mul(c, b[j]))
    return _trim(r[:db])


def _monic(ctx, a):
    if not a or a[-1] == 1:
        return list(a)
    return _scale(ctx, a, ctx.inv(a[-1]))


def _gcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(ctx, a, b)
    return _monic(ctx, a)


def _mulmod(ctx, a, b, m):
    return _mod(ctx, _mul(ctx, a, b), m)


def _powmod(ctx, a, e, m):
    result = [1]
    base = _mod(ctx, a, m)
    while e:
        if e & 1:
            result = _mulmod(ctx, result, base, m)
        e >>= 1
        if e:
            base = _mulmod(ctx, base, base, m)
    return result


def _x_powmod(ctx, e, m):
    """x**e mod m by left-to-right binary powering (multiplying by x is a shift)."""
    if len(m) <= 1:
        return []
    result = [1]
    for bit in bin(e)[2:]:
        result = _mulmod(ctx, result, result, m)
        if bit == "1":
            result = _mod(ctx, [0] + result, m)
    return result


def _derivative(ctx, a):
    p = ctx.p
    mul = ctx.mul
    return _trim([mul(a[i], i % p) for i in range(1, len(a))])


def _eval(ctx, a, x):
    add, mul = ctx.add, ctx.mul
    acc = 0
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


# --- the wrapper class ------------------------------------------------------------

class UniPoly:
    """Polynomial over a finite field.

    ``UniPoly(ctx, [1, 0, 2])`` is 1 + 2x^2; plain ints are read as integers
    mod p, ``FieldElement`` entries must belong to ``ctx``.
    """

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        codes = []
        for v in coeffs:
            if isinstance(v, FieldElement):
                if v.ctx is not ctx:
                    raise MixedContexts("coefficient from another field")
                codes.append(v.code)
            else:
                codes.append(int(v) % ctx.p)
        self.ctx = ctx
        self.c = _trim(codes)

    @classmethod
    def from_codes(cls, ctx: FieldCtx, codes) -> UniPoly:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.c = _trim(list(codes))
        return obj

    @classmethod
    def x(cls, ctx: FieldCtx) -> UniPoly:
        return cls.from_codes(ctx, [0, 1])

    @classmethod
    def constant(cls, ctx: FieldCtx, value) -> UniPoly:
        return cls(ctx, [value])

    @classmethod
    def from_roots(cls, ctx: FieldCtx, roots) -> UniPoly:
        out = [1]
        for r in roots:
            code = r.code if isinstance(r, FieldElement) else int(r) % ctx.p
            out = _mul(ctx, out, [ctx.neg(code), 1])
        return cls.from_codes(ctx, out)

    # -- basic properties
    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, c) for c in self.c]

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> FieldElement:
        if not self.c:
            return FieldElement(self.ctx, 0)
        return FieldElement(self.ctx, self.c[-1])

    def monic(self) -> UniPoly:
        return UniPoly.from_codes(self.ctx, _monic(self.ctx, self.c))

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def _check(self, other) -> list[int]:
        if isinstance(other, UniPoly):
            if other.ctx is not self.ctx:
                raise MixedContexts(f"{self.ctx!r} vs {other.ctx!r}")
            return other.c
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise MixedContexts(f"{self.ctx!r} vs {other.ctx!r}")
            return [other.code] if other.code else []
        if isinstance(other, int):
            v = other % self.ctx.p
            return [v] if v else []
        raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")

    # -- arithmetic
    def __add__(self, other):
        return UniPoly.from_codes(self.ctx, _add(self.ctx, self.c, self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return UniPoly.from_codes(self.ctx, _sub(self.ctx, self.c, self._check(other)))

    def __rsub__(self, other):
        return UniPoly.from_codes(self.ctx, _sub(self.ctx, self._check(other), self.c))

    def __neg__(self):
        neg = self.ctx.neg
        return UniPoly.from_codes(self.ctx, [neg(x) for x in self.c])

    def __mul__(self, other):
        return UniPoly.from_codes(self.ctx, _mul(self.ctx, self.c, self._check(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = [1]
        base = self.c
        while k:
            if k & 1:
                result = _mul(self.ctx, result, base)
            k >>= 1
            if k:
                base = _mul(self.ctx, base, base)
        return UniPoly.from_codes(self.ctx, result)

    def __divmod__(self, other):
        q, r = _divmod(self.ctx, self.c, self._check(other))
        return UniPoly.from_codes(self.ctx, q), UniPoly.from_codes(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        b = self._check(other)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        return UniPoly.from_codes(self.ctx, _mod(self.ctx, self.c, b))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.ctx is other.ctx and self.c == other.c
        if isinstance(other, (int, FieldElement)):
            return self.c == self._check(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.degree, tuple(self.c)))

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    def __lt__(self, other: UniPoly):
        return self.sort_key() < other.sort_key()

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.ctx is not self.ctx:
                raise MixedContexts("evaluation point from another field")
            return FieldElement(self.ctx, _eval(self.ctx, self.c, x.code))
        return FieldElement(self.ctx, _eval(self.ctx, self.c, int(x) % self.ctx.p))

    def derivative(self) -> UniPoly:
        return UniPoly.from_codes(self.ctx, _derivative(self.ctx, self.c))

    def powmod(self, e: int, modulus: UniPoly) -> UniPoly:
        return UniPoly.from_codes(self.ctx, _powmod(self.ctx, self.c, e, self._check(modulus)))

    def embed(self, target: FieldCtx) -> UniPoly:
        """Image under the canonical embedding into ``target``."""
        if target is self.ctx:
            return self
        emb = embedding(self.ctx, target)
        return UniPoly.from_codes(target, [emb.map_code(x) for x in self.c])

    def to_json(self) -> list[list[int]]:
        return [list(self.ctx.coeffs(x)) for x in self.c]

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if not x:
                continue
            coef = repr(FieldElement(self.ctx, x))
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and x == 1:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(parts)


def _same_ctx(f: UniPoly, g: UniPoly):
    if f.ctx is not g.ctx:
        raise MixedContexts(f"{f.ctx!r} vs {g.ctx!r}")


def gcd_monic(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    _same_ctx(f, g)
    return UniPoly.from_codes(f.ctx, _gcd(f.ctx, f.c, g.c))


def resultant(f: UniPoly, g: UniPoly) -> FieldElement:
    """Res(f, g), the Sylvester determinant with the rows of f first."""
    _same_ctx(f, g)
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    ctx = f.ctx
    mul, pw = ctx.mul, ctx.pow
    a, b = list(f.c), list(g.c)
    acc = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return FieldElement(ctx, mul(acc, pw(b[0], m)))
        if m == 0:
            return FieldElement(ctx, mul(acc, pw(a[0], n)))
        if m < n:
            a, b = b, a
            if (m * n) % 2:
                acc = ctx.neg(acc)
            continue
        # Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r) with r = a mod b
        r = _mod(ctx, a, b)
        if not r:
            return FieldElement(ctx, 0)
        if (m * n) % 2:
            acc = ctx.neg(acc)
        acc = mul(acc, pw(b[-1], m - (len(r) - 1)))
        a, b = b, r


# --- factorization ---------------------------------------------------------------

def _pth_root(ctx: FieldCtx, a: list[int]) -> list[int]:
    p = ctx.p
    e = ctx.order // p
    pw = ctx.pow
    return _trim([pw(a[i], e) for i in range(0, len(a), p)])


def _squarefree(ctx, f: list[int]) -> list[tuple[list[int], int]]:
    f = _monic(ctx, f)
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    fp = _derivative(ctx, f)
    if not fp:
        for g, j in _squarefree(ctx, _pth_root(ctx, f)):
            out.append((g, j * ctx.p))
        return out
    c = _gcd(ctx, f, fp)
    w = _divmod(ctx, f, c)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(ctx, w, c)
        z = _divmod(ctx, w, y)[0]
        if len(z) > 1:
            out.append((_monic(ctx, z), i))
        i += 1
        w = y
        c = _divmod(ctx, c, y)[0]
    if len(c) > 1:
        for g, j in _squarefree(ctx, _pth_root(ctx, c)):
            out.append((g, j * ctx.p))
    return out


def _distinct_degree(ctx, f: list[int]) -> list[tuple[list[int], int]]:
    """Split a monic squarefree polynomial into products of equal-degree factors."""
    out = []
    q = ctx.order
    f = list(f)
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(ctx, h, q, f)
        g = _gcd(ctx, f, _sub(ctx, h, [0, 1]))
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(ctx, f, g)[0]
            h = _mod(ctx, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(ctx, f: list[int], d: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a monic product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    if n == 0:
        return []
    q = ctx.order
    if q % 2 == 0:  # pragma: no cover - p > 3 throughout
        raise NotImplementedError("characteristic 2")
    e = (q ** d - 1) // 2
    while True:
        a = _trim([ctx.random_code(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        g = _gcd(ctx, f, a)
        if 1 < len(g) < len(f):
            break
        b = _powmod(ctx, a, e, f)
        g = _gcd(ctx, f, _sub(ctx, b, [1]))
        if 1 < len(g) < len(f):
            break
    h = _divmod(ctx, f, g)[0]
    return _equal_degree(ctx, g, d, rng) + _equal_degree(ctx, _monic(ctx, h), d, rng)


def squarefree_factorization(f: UniPoly) -> list[tuple[UniPoly, int]]:
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    return [(UniPoly.from_codes(f.ctx, g), k) for g, k in _squarefree(f.ctx, f.c)]


def distinct_degree_factorization(f: UniPoly) -> list[tuple[UniPoly, int]]:
    f = f.monic()
    return [(UniPoly.from_codes(f.ctx, g), d) for g, d in _distinct_degree(f.ctx, f.c)]


def equal_degree_factorization(f: UniPoly, d: int, seed: int = DEFAULT_SEED) -> list[UniPoly]:
    f = f.monic()
    rng = random.Random(seed)
    parts = _equal_degree(f.ctx, f.c, d, rng)
    return sorted(UniPoly.from_codes(f.ctx, g) for g in parts)


def factor(f: UniPoly, seed: int = DEFAULT_SEED) -> list[tuple[UniPoly, int]]:
    """Complete factorization into monic irreducibles with multiplicities.

    The result is sorted by (degree, coefficients); ``lc(f) * prod(g**k)``
    reproduces ``f``.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    ctx = f.ctx
    rng = random.Random(seed)
    mult: Counter = Counter()
    for g, k in _squarefree(ctx, f.c):
        for h, d in _distinct_degree(ctx, g):
            for irr in _equal_degree(ctx, h, d, rng):
                mult[tuple(irr)] += k
    out = [(UniPoly.from_codes(ctx, list(c)), k) for c, k in mult.items()]
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _linear_roots(ctx: FieldCtx, f: list[int], rng: random.Random) -> list[int]:
    """Distinct roots in ``ctx`` of ``f`` (codes, sorted)."""
    f = _monic(ctx, f)
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [ctx.neg(f[0])]
    xq = _x_powmod(ctx, ctx.order, f)
    g = _gcd(ctx, f, _sub(ctx, xq, [0, 1]))
    if len(g) <= 1:
        return []
    if len(g) == 3:
        return sorted(_quadratic_roots(ctx, g))
    return sorted(ctx.neg(h[0]) for h in _equal_degree(ctx, g, 1, rng))


def _quadratic_roots(ctx, g):
    # monic x^2 + b x + c with two distinct roots in ctx
    from .field_tower import sqrt

    b, c = g[1], g[0]
    disc = ctx.sub(ctx.mul(b, b), ctx.mul(4 % ctx.p, c))
    r = sqrt(FieldElement(ctx, disc)).code
    half = ctx.inv(2)
    nb = ctx.neg(b)
    return [ctx.mul(ctx.add(nb, r), half), ctx.mul(ctx.sub(nb, r), half)]


def roots_in_field(f: UniPoly, target: FieldCtx | None = None, seed: int = DEFAULT_SEED) -> list[FieldElement]:
    """Distinct roots of ``f`` lying in ``target`` (default: f's own field), sorted."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has every element as a root")
    target = f.ctx if target is None else target
    g = f.embed(target)
    rng = random.Random(seed)
    return [FieldElement(target, r) for r in _linear_roots(target, g.c, rng)]
