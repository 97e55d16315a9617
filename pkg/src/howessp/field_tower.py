"""Finite fields F_{p^n} represented over the prime field.

Every field is a quotient F_p[x]/(m) by a deterministic monic irreducible
modulus ``m`` (the first irreducible in lexicographic coefficient order).
Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
little-endian power-basis coordinates; numeric order of the codes is the
canonical element order used for every tie-break in the package.

Arithmetic on codes goes through the ``FieldCtx`` methods (``add``, ``mul``,
...), which pick the cheapest available backend: full operation tables for
tiny fields, Zech logarithms for medium fields and plain polynomial
arithmetic otherwise.  ``FieldElement`` is a thin immutable wrapper for
interactive use.
"""

from __future__ import annotations

import functools
import random
from math import gcd

import numpy as np

from .errors import CompositeOrSmallPrime, MixedContexts, NotAnExtension

__all__ = [
    "FieldCtx",
    "FieldElement",
    "Embedding",
    "is_prime",
    "make_base_field",
    "make_prime_field",
    "make_field",
    "extend_field",
    "embedding",
    "frobenius",
    "sqrt",
]

FULL_TABLE_LIMIT = 1024
LOG_TABLE_LIMIT = 1 << 18


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- small helpers for polynomials over F_p given as int lists -------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lc = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pmod([c % p for c in out], m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible_fp(m, p) -> bool:
    """Ben-Or test for a monic polynomial over F_p (little-endian ints)."""
    n = len(m) - 1
    if n <= 1:
        return n == 1
    xp = [0, 1]
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    # constant term varies fastest, x^{n-1} coefficient slowest
    for idx in range(p ** n):
        lower = []
        k = idx
        for _ in range(n):
            lower.append(k % p)
            k //= p
        m = lower + [1]
        if _is_irreducible_fp(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- the field context ---------------------------------------------------------

class FieldCtx:
    """The field F_{p^degree} = F_p[x]/(modulus).

    Instances are interned by ``make_field``; compare contexts with ``is``.
    """

    def __init__(self, p: int, degree: int, modulus: tuple[int, ...]):
        self.p = p
        self.degree = degree
        self.modulus = modulus
        self.order = p ** degree
        self._mod_low = [(-c) % p for c in modulus[:-1]]
        self._powers = [p ** i for i in range(degree + 1)]
        self._setup_arithmetic()
        self._base_embedding = None

    def __reduce__(self):
        return (make_field, (self.p, self.degree))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, degree={self.degree})"

    @property
    def level(self) -> int:
        """Half the absolute degree (this is F_{p^{2*level}})."""
        return self.degree // 2

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    # -- code <-> coordinates
    def coeffs(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.degree):
            out.append(code % p)
            code //= p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        if len(coeffs) > self.degree:
            raise ValueError("too many coordinates for this field")
        p = self.p
        code = 0
        for i, c in enumerate(coeffs):
            code += (int(c) % p) * self._powers[i]
        return code

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def element(self, value) -> FieldElement:
        """Wrap an int (taken mod p), a coordinate sequence or an element."""
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise MixedContexts("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        return FieldElement(self, self.from_int(value))

    def from_code(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def gen(self) -> FieldElement:
        """The class of x in F_p[x]/(modulus)."""
        if self.degree == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self):
        for code in range(self.order):
            yield FieldElement(self, code)

    def random_code(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_element(self, rng: random.Random) -> FieldElement:
        return FieldElement(self, rng.randrange(self.order))

    def serialize(self) -> dict:
        out = {"p": self.p, "level": self.degree // 2, "modulus": list(self.modulus)}
        if self.degree % 2:
            out["degree"] = self.degree
        return out

    @property
    def base_embedding(self) -> FieldElement | None:
        """Image of the generator of F_{p^2} in this field (None if absent)."""
        if self.degree % 2:
            return None
        if self._base_embedding is None:
            if self.degree == 2:
                self._base_embedding = self.gen()
            else:
                base = make_field(self.p, 2)
                m1, m0 = base.modulus[1], base.modulus[0]
                disc = self.element((m1 * m1 - 4 * m0) % self.p)
                r = sqrt(disc)
                assert r is not None
                half = self.element((self.p + 1) // 2)
                roots = [(-self.element(m1) + r) * half, (-self.element(m1) - r) * half]
                self._base_embedding = min(roots)
        return self._base_embedding

    # -- arithmetic setup
    def _setup_arithmetic(self):
        q, p = self.order, self.p
        if self.degree == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: a * b % p
            self.inv = self._inv_prime
            self.pow = self._pow_prime
            self.tier = "prime"
            return
        if q <= LOG_TABLE_LIMIT:
            self._build_log_tables()
        else:
            self.tier = "generic"
            self.add = self._add_generic
            self.sub = lambda a, b: self._add_generic(a, self._neg_generic(b))
            self.neg = self._neg_generic
            self.mul = self._mul_generic
            self.inv = self._inv_generic
            self.pow = self._pow_generic

    def _inv_prime(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def _pow_prime(self, a, k):
        if k < 0:
            a = self._inv_prime(a)
            k = -k
        return pow(a, k, self.p)

    # generic backend: digit lists
    def _add_generic(self, a, b):
        p = self.p
        out = 0
        w = 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _neg_generic(self, a):
        p = self.p
        out = 0
        w = 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def _mul_generic(self, a, b):
        if a == 0 or b == 0:
            return 0
        p, n = self.p, self.degree
        da, db = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        low = self._mod_low
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(n):
                    prod[i - n + j] += c * low[j]
        code = 0
        for i in range(n - 1, -1, -1):
            code = code * p + prod[i] % p
        return code

    def _pow_generic(self, a, k):
        if k < 0:
            a = self._inv_generic(a)
            k = -k
        mul = self._mul_generic
        result = 1
        while k:
            if k & 1:
                result = mul(result, a)
            k >>= 1
            if k:
                a = mul(a, a)
        return result

    def _inv_generic(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid on the modulus
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.coeffs(a)))
        s0, s1 = [], [1]
        while len(r1) > 1:
            inv_lc = pow(r1[-1], p - 2, p)
            qt = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            for i in range(len(r) - 1, len(r1) - 2, -1):
                c = r[i] * inv_lc % p
                qt[i - len(r1) + 1] = c
                if c:
                    for j in range(len(r1)):
                        r[i - len(r1) + 1 + j] = (r[i - len(r1) + 1 + j] - c * r1[j]) % p
            r = _trim(r[: len(r1) - 1])
            prod = [0] * (len(qt) + len(s1))
            for i, x in enumerate(qt):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            s = [0] * max(len(s0), len(prod))
            for i, x in enumerate(s0):
                s[i] += x
            for i, x in enumerate(prod):
                s[i] -= x
            s = _trim([c % p for c in s])
            r0, r1, s0, s1 = r1, r, s1, s
        c = pow(r1[0], p - 2, p)
        return self.from_coeffs([x * c % p for x in s1])

    def _find_primitive(self):
        q = self.order
        factors = _prime_factors(q - 1)
        for code in range(2, q):
            if all(self._pow_generic(code, (q - 1) // r) != 1 for r in factors):
                return code
        raise AssertionError("no primitive element")  # pragma: no cover

    def _build_log_tables(self):
        q, p = self.order, self.p
        n = q - 1
        g = self._find_primitive()
        exp = [0] * n
        cur = 1
        for k in range(n):
            exp[k] = cur
            cur = self._mul_generic(cur, g)
        log = [-1] * q
        for k, c in enumerate(exp):
            log[c] = k
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        zech = [0] * n
        for k, c in enumerate(exp):
            c0 = c % p
            s = c - c0 + (c0 + 1) % p
            zech[k] = log[s]
        neg = [self._neg_generic(c) for c in range(q)]
        inv = [0] * q
        for c in range(1, q):
            inv[c] = exp[(n - log[c]) % n]
        exp2 = exp + exp
        self._exp, self._log, self._zech = exp, log, zech
        self._neg_table, self._inv_table = neg, inv
        self.primitive = g

        if q <= FULL_TABLE_LIMIT:
            self.tier = "full"
            arr = np.arange(q)
            digits = [(arr // p ** i) % p for i in range(self.degree)]
            add_t = np.zeros((q, q), dtype=np.int64)
            for i, d in enumerate(digits):
                add_t += ((d[:, None] + d[None, :]) % p) * p ** i
            logs = np.array(log)
            expa = np.array(exp2 + [0])
            idx = (logs[:, None] + logs[None, :])
            idx[logs < 0, :] = 2 * n
            idx[:, logs < 0] = 2 * n
            mul_t = expa[idx]
            sub_t = add_t[:, np.array(neg)]
            A = add_t.ravel().tolist()
            M = mul_t.ravel().tolist()
            S = sub_t.ravel().tolist()
            self._add_table, self._mul_table, self._sub_table = A, M, S

            def add(a, b):
                return A[a * q + b]

            def sub(a, b):
                return S[a * q + b]

            def mul(a, b):
                return M[a * q + b]
        else:
            self.tier = "log"
            zech_ = zech
            log_ = log
            exp_ = exp2
            neg_ = neg

            def add(a, b):
                if a == 0:
                    return b
                if b == 0:
                    return a
                la = log_[a]
                d = log_[b] - la
                if d < 0:
                    d += n
                z = zech_[d]
                if z < 0:
                    return 0
                return exp_[la + z]

            def sub(a, b):
                return add(a, neg_[b])

            def mul(a, b):
                if a == 0 or b == 0:
                    return 0
                return exp_[log_[a] + log_[b]]

        inv_t = inv

        def inv_(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return inv_t[a]

        def pow_(a, k):
            if a == 0:
                if k < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 1 if k == 0 else 0
            return exp[(log[a] * k) % n]

        self.add, self.sub, self.mul = add, sub, mul
        self.neg = neg.__getitem__
        self.inv = inv_
        self.pow = pow_

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1


class FieldElement:
    """Immutable element of a ``FieldCtx``."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise MixedContexts(f"{self.ctx!r} vs {other.ctx!r}")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.code))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.degree, self.code))

    def __lt__(self, other: FieldElement):
        if not isinstance(other, FieldElement) or other.ctx is not self.ctx:
            return NotImplemented
        return self.code < other.code

    def __le__(self, other: FieldElement):
        if not isinstance(other, FieldElement) or other.ctx is not self.ctx:
            return NotImplemented
        return self.code <= other.code

    def __bool__(self):
        return self.code != 0

    def is_zero(self) -> bool:
        return self.code == 0

    def in_prime_field(self) -> bool:
        return self.code < self.ctx.p

    def frobenius(self, k: int = 1) -> FieldElement:
        return frobenius(self, k)

    def sqrt(self) -> FieldElement | None:
        return sqrt(self)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        c = self.coeffs
        if self.ctx.degree == 1:
            return f"{c[0]}"
        terms = []
        for i, v in enumerate(c):
            if v:
                terms.append(f"{v}" if i == 0 else (f"{v}*g" if i == 1 else f"{v}*g^{i}"))
        return "(" + (" + ".join(terms) if terms else "0") + ")"


# --- constructors ----------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def make_field(p: int, degree: int) -> FieldCtx:
    """Interned context for F_{p^degree} with the canonical modulus."""
    if not is_prime(p) or p <= 3:
        raise CompositeOrSmallPrime(f"p = {p} must be a prime > 3")
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree == 1:
        return FieldCtx(p, 1, (0, 1))
    return FieldCtx(p, degree, _canonical_modulus(p, degree))


def make_base_field(p: int) -> FieldCtx:
    """The canonical F_{p^2}."""
    return make_field(p, 2)


def make_prime_field(p: int) -> FieldCtx:
    return make_field(p, 1)


class Embedding:
    """Ring embedding ``src -> dst`` determined by the image of the generator."""

    def __init__(self, src: FieldCtx, dst: FieldCtx, gen_image: int):
        self.src, self.dst = src, dst
        self.gen_image = gen_image
        powers = [1]
        for _ in range(src.degree - 1):
            powers.append(dst.mul(powers[-1], gen_image))
        self._powers = powers
        self._table = None
        if src.order <= LOG_TABLE_LIMIT and src.degree > 1:
            self._table = [self._map_code(c) for c in range(src.order)]

    def _map_code(self, code: int) -> int:
        if self.src.degree == 1:
            return code
        dst, p = self.dst, self.src.p
        out = 0
        for pw in self._powers:
            c = code % p
            code //= p
            if c:
                out = dst.add(out, dst.mul(c, pw))
        return out

    def map_code(self, code: int) -> int:
        if self._table is not None:
            return self._table[code]
        return self._map_code(code)

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.ctx is not self.src:
                raise MixedContexts("element is not in the embedding's source field")
            return FieldElement(self.dst, self.map_code(x.code))
        return self.map_code(x)


@functools.lru_cache(maxsize=None)
def embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    """Canonical embedding of ``src`` into ``dst``.

    The generator of ``src`` goes to the least root of its modulus in ``dst``
    that is compatible with the fixed copy of F_{p^2} in both fields, so
    elements coming from F_{p^2} are always mapped consistently.
    """
    if src.p != dst.p or dst.degree % src.degree:
        raise NotAnExtension(f"{dst!r} does not extend {src!r}")
    if src is dst:
        return Embedding(src, dst, src.gen().code if src.degree > 1 else 0)
    if src.degree == 1:
        return Embedding(src, dst, 0)
    from .unipoly import UniPoly, roots_in_field

    fp = make_prime_field(src.p)
    mod = UniPoly(fp, list(src.modulus))
    roots = roots_in_field(mod, dst)
    src_base = src.base_embedding
    dst_base = dst.base_embedding
    for r in roots:
        emb = Embedding(src, dst, r.code)
        if src_base is None or dst_base is None or emb(src_base) == dst_base:
            return emb
    raise AssertionError("no compatible embedding found")  # pragma: no cover


def extend_field(ctx: FieldCtx, d: int) -> tuple[FieldCtx, Embedding]:
    """The degree-``d`` extension of ``ctx`` together with the inclusion map."""
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    big = make_field(ctx.p, ctx.degree * d)
    return big, embedding(ctx, big)


def common_field(ctxs) -> FieldCtx:
    """Smallest canonical field containing all given fields."""
    ctxs = list(ctxs)
    deg = 1
    for c in ctxs:
        deg = deg * c.degree // gcd(deg, c.degree)
    return make_field(ctxs[0].p, deg)


def frobenius(x: FieldElement, k: int = 1) -> FieldElement:
    """x ** (p ** k)."""
    ctx = x.ctx
    e = pow(ctx.p, k, ctx.order - 1) if x.code else 1
    if x.code and e == 0:
        e = ctx.order - 1
    return FieldElement(ctx, ctx.pow(x.code, e))


def sqrt(x: FieldElement) -> FieldElement | None:
    """Least square root of ``x`` in its own field, or None."""
    ctx = x.ctx
    a = x.code
    if a == 0:
        return FieldElement(ctx, 0)
    if not ctx.is_square(a):
        return None
    q = ctx.order
    # Tonelli-Shanks
    s, t = 0, q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    z = 2
    while ctx.is_square(z):
        z += 1
    mul, pw = ctx.mul, ctx.pow
    m = s
    c = pw(z, t)
    r = pw(a, (t + 1) // 2)
    tt = pw(a, t)
    while tt != 1:
        i, u = 0, tt
        while u != 1:
            u = mul(u, u)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = mul(b, b)
        m = i
        c = mul(b, b)
        r = mul(r, b)
        tt = mul(tt, c)
    return FieldElement(ctx, min(r, ctx.neg(r)))
