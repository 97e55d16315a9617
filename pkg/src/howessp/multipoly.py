"""Sparse multivariate polynomials, Buchberger's algorithm and a solver for
zero-dimensional systems.

A ``MultiPoly`` maps exponent tuples to field codes.  Monomial orders are
given by name (``"lex"`` or ``"grevlex"``) with the variable order fixed by
the ``vars`` tuple (first variable largest).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .errors import MixedContexts, NotZeroDimensional
from .field_tower import FieldCtx, FieldElement, embedding, make_field
from .unipoly import _gcd, _monic, _distinct_degree, _equal_degree, _squarefree, _trim

__all__ = [
    "MultiPoly",
    "VarietyPoint",
    "buchberger",
    "normal_form",
    "s_polynomial",
    "is_groebner_basis",
    "lex_basis",
    "solve_zero_dimensional",
]

log = logging.getLogger(__name__)


def _lex_key(m):
    return m


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


ORDERS = {"lex": _lex_key, "grevlex": _grevlex_key}


class MultiPoly:
    """Polynomial in ``vars`` over ``ctx``; ``terms`` maps exponent tuples to codes."""

    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: FieldCtx, vars, terms=None):
        self.ctx = ctx
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            n = len(self.vars)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("exponent vector length does not match vars")
                code = c.code if isinstance(c, FieldElement) else c
                if code:
                    self.terms[tuple(m)] = code

    @classmethod
    def _raw(cls, ctx, vars, terms):
        obj = cls.__new__(cls)
        obj.ctx, obj.vars, obj.terms = ctx, vars, terms
        return obj

    @classmethod
    def var(cls, ctx: FieldCtx, vars, name: str) -> MultiPoly:
        vars = tuple(vars)
        m = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(ctx, vars, {m: 1})

    @classmethod
    def constant(cls, ctx: FieldCtx, vars, value) -> MultiPoly:
        vars = tuple(vars)
        code = value.code if isinstance(value, FieldElement) else int(value) % ctx.p
        return cls._raw(ctx, vars, {(0,) * len(vars): code} if code else {})

    def gens(self):
        return [MultiPoly.var(self.ctx, self.vars, v) for v in self.vars]

    def copy(self) -> MultiPoly:
        return MultiPoly._raw(self.ctx, self.vars, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            for v, e in zip(self.vars, m):
                if e:
                    used.add(v)
        return used

    def leading_monomial(self, order: str = "lex"):
        return max(self.terms, key=ORDERS[order])

    def leading_coefficient(self, order: str = "lex") -> FieldElement:
        return FieldElement(self.ctx, self.terms[self.leading_monomial(order)])

    def coefficient(self, monomial) -> FieldElement:
        return FieldElement(self.ctx, self.terms.get(tuple(monomial), 0))

    def monic(self, order: str = "lex") -> MultiPoly:
        if not self.terms:
            return self
        inv = self.ctx.inv(self.terms[self.leading_monomial(order)])
        mul = self.ctx.mul
        return MultiPoly._raw(self.ctx, self.vars, {m: mul(c, inv) for m, c in self.terms.items()})

    # -- arithmetic
    def _other(self, other):
        if isinstance(other, MultiPoly):
            if other.ctx is not self.ctx:
                raise MixedContexts(f"{self.ctx!r} vs {other.ctx!r}")
            if other.vars != self.vars:
                raise ValueError("variable lists differ")
            return other.terms
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise MixedContexts(f"{self.ctx!r} vs {other.ctx!r}")
            code = other.code
        elif isinstance(other, int):
            code = other % self.ctx.p
        else:
            raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")
        return {(0,) * len(self.vars): code} if code else {}

    def __add__(self, other):
        t = dict(self.terms)
        add = self.ctx.add
        for m, c in self._other(other).items():
            v = add(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly._raw(self.ctx, self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MultiPoly._raw(self.ctx, self.vars, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        t = dict(self.terms)
        sub = self.ctx.sub
        for m, c in self._other(other).items():
            v = sub(t.get(m, 0), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return MultiPoly._raw(self.ctx, self.vars, t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        ot = self._other(other)
        add, mul = self.ctx.add, self.ctx.mul
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in ot.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = add(out.get(m, 0), mul(c1, c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MultiPoly._raw(self.ctx, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.constant(self.ctx, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ctx is other.ctx and self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self.terms == self._other(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def subs(self, values: dict) -> MultiPoly:
        """Substitute field elements (same ctx) for some variables."""
        idx = {v: i for i, v in enumerate(self.vars)}
        vals = {}
        for name, val in values.items():
            code = val.code if isinstance(val, FieldElement) else int(val) % self.ctx.p
            if isinstance(val, FieldElement) and val.ctx is not self.ctx:
                raise MixedContexts("substituted value from another field")
            vals[idx[name]] = code
        add, mul, pw = self.ctx.add, self.ctx.mul, self.ctx.pow
        out: dict = {}
        for m, c in self.terms.items():
            mm = list(m)
            for i, code in vals.items():
                if mm[i]:
                    c = mul(c, pw(code, mm[i]))
                    mm[i] = 0
            if c:
                key = tuple(mm)
                v = add(out.get(key, 0), c)
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return MultiPoly._raw(self.ctx, self.vars, out)

    def evaluate(self, values: dict) -> FieldElement:
        r = self.subs(values)
        if any(any(m) for m in r.terms):
            raise ValueError("not all variables were assigned")
        return FieldElement(self.ctx, r.terms.get((0,) * len(self.vars), 0))

    def embed(self, target: FieldCtx) -> MultiPoly:
        if target is self.ctx:
            return self
        emb = embedding(self.ctx, target)
        return MultiPoly._raw(target, self.vars, {m: emb.map_code(c) for m, c in self.terms.items()})

    def univariate(self, name: str) -> list[int]:
        """Coefficient codes (little-endian) when only ``name`` occurs."""
        i = self.vars.index(name)
        out = [0] * (self.degree_in(name) + 1)
        for m, c in self.terms.items():
            if any(e for j, e in enumerate(m) if j != i):
                raise ValueError(f"polynomial involves variables other than {name}")
            out[m[i]] = c
        return _trim(out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = FieldElement(self.ctx, self.terms[m])
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e)
            parts.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(parts)


# --- Groebner machinery on raw term dicts ------------------------------------------

def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Poly:
    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce(ctx, f: dict, basis: list[_Poly], key, full: bool = True) -> dict:
    """Remainder of f on division by basis (full reduction unless ``full`` is False)."""
    add, sub, mul, inv = ctx.add, ctx.sub, ctx.mul, ctx.inv
    f = dict(f)
    rem: dict = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g in basis:
            glm = g.lm
            if all(x <= y for x, y in zip(glm, lm)):
                shift = tuple(y - x for x, y in zip(glm, lm))
                factor = mul(c, inv(g.lc))
                del f[lm]
                for m, gc in g.terms.items():
                    if m is glm:
                        continue
                    mm = tuple(a + b for a, b in zip(m, shift))
                    v = sub(f.get(mm, 0), mul(factor, gc))
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(ctx, f: _Poly, g: _Poly) -> dict:
    sub, mul, inv = ctx.sub, ctx.mul, ctx.inv
    L = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(L, f.lm))
    sg = tuple(a - b for a, b in zip(L, g.lm))
    cf = inv(f.lc)
    cg = inv(g.lc)
    out: dict = {}
    for m, c in f.terms.items():
        out[tuple(a + b for a, b in zip(m, sf))] = mul(c, cf)
    for m, c in g.terms.items():
        mm = tuple(a + b for a, b in zip(m, sg))
        v = sub(out.get(mm, 0), mul(c, cg))
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _groebner(ctx, polys: list[dict], key) -> list[dict]:
    """Reduced monic Groebner basis (Buchberger with Gebauer-Moeller pair criteria)."""
    inv, mul = ctx.inv, ctx.mul
    basis: list[_Poly] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def lcm_key(pair):
        L = _lcm(basis[pair[0]].lm, basis[pair[1]].lm)
        return (sum(L), key(L))

    def update(h: int):
        nonlocal active, pairs
        hlm = basis[h].lm
        C = [(g, _lcm(basis[g].lm, hlm)) for g in active]
        D: list = []
        while C:
            g1, L1 = C.pop(0)
            if _coprime(basis[g1].lm, hlm) or not any(
                _divides(L2, L1) for _, L2 in C + D
            ):
                D.append((g1, L1))
        new_pairs = [(g, h) for g, _ in D if not _coprime(basis[g].lm, hlm)]
        survivors = []
        for a, b in pairs:
            L = _lcm(basis[a].lm, basis[b].lm)
            if (
                _divides(hlm, L)
                and _lcm(basis[a].lm, hlm) != L
                and _lcm(basis[b].lm, hlm) != L
            ):
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(hlm, basis[g].lm)] + [h]

    def add_poly(terms):
        p = _Poly(terms, key)
        c = inv(p.lc)
        if c != 1:
            p = _Poly({m: mul(v, c) for m, v in terms.items()}, key)
        basis.append(p)
        update(len(basis) - 1)

    for f in polys:
        if not f:
            continue
        r = _reduce(ctx, f, [basis[g] for g in active], key)
        if r:
            add_poly(r)
            if all(e == 0 for e in basis[-1].lm):
                return [{basis[-1].lm: 1}]

    while pairs:
        pairs.sort(key=lcm_key)
        a, b = pairs.pop(0)
        s = _spoly(ctx, basis[a], basis[b])
        if not s:
            continue
        r = _reduce(ctx, s, [basis[g] for g in active], key)
        if r:
            add_poly(r)
            if all(e == 0 for e in basis[-1].lm):
                return [{basis[-1].lm: 1}]

    # minimalize then interreduce
    G = [basis[g] for g in active]
    G = [g for g in G if not any(h is not g and _divides(h.lm, g.lm) for h in G)]
    G.sort(key=lambda g: key(g.lm))
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1:]
        r = _reduce(ctx, g.terms, others, key)
        c = inv(r[max(r, key=key)])
        out.append({m: mul(v, c) for m, v in r.items()})
    out.sort(key=lambda t: key(max(t, key=key)))
    return out


def _check_ring(polys: list[MultiPoly]):
    ctx, vars = polys[0].ctx, polys[0].vars
    for f in polys:
        if f.ctx is not ctx:
            raise MixedContexts("generators over different fields")
        if f.vars != vars:
            raise ValueError("generators over different variable lists")
    return ctx, vars


def buchberger(gens: list[MultiPoly], order: str = "lex") -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    The result is monic, auto-reduced and sorted by increasing leading
    monomial.  The zero ideal gives ``[]`` and the unit ideal ``[1]``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ctx, vars = _check_ring(gens)
    key = ORDERS[order]
    G = _groebner(ctx, [g.terms for g in gens], key)
    return [MultiPoly._raw(ctx, vars, t) for t in G]


def normal_form(f: MultiPoly, basis: list[MultiPoly], order: str = "lex") -> MultiPoly:
    """Remainder of multivariate division of ``f`` by ``basis``."""
    key = ORDERS[order]
    B = [_Poly(g.terms, key) for g in basis if not g.is_zero()]
    for g in basis:
        if g.ctx is not f.ctx:
            raise MixedContexts("basis over another field")
    return MultiPoly._raw(f.ctx, f.vars, _reduce(f.ctx, f.terms, B, key))


def s_polynomial(f: MultiPoly, g: MultiPoly, order: str = "lex") -> MultiPoly:
    key = ORDERS[order]
    return MultiPoly._raw(f.ctx, f.vars, _spoly(f.ctx, _Poly(f.terms, key), _Poly(g.terms, key)))


def is_groebner_basis(basis: list[MultiPoly], order: str = "lex") -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True


def _staircase_check(G: list[_Poly], n: int, vars) -> None:
    for i in range(n):
        if not any(g.lm[i] > 0 and sum(g.lm) == g.lm[i] for g in G):
            raise NotZeroDimensional(f"variable {vars[i]} is not bounded by the ideal")


def _fglm(ctx, G: list[_Poly], n: int, key_to) -> list[dict]:
    """Convert a reduced grevlex Groebner basis of a zero-dimensional ideal to ``key_to``.

    Monomials are visited in increasing target order; the normal form of each
    is computed from that of its parent and tested for linear dependence on
    the normal forms of the target staircase found so far.
    """
    import heapq

    sub, mul, inv = ctx.sub, ctx.mul, ctx.inv
    grevlex = ORDERS["grevlex"]
    one = (0,) * n
    nf_cache: dict[tuple, dict] = {}
    rows: dict[tuple, tuple[dict, dict]] = {}  # pivot monomial -> (vector, combination)
    order: list[tuple] = []  # pivots in insertion order
    new_basis: list[dict] = []
    leads: list[tuple] = []
    heap = [(key_to(one), one, None, -1)]
    seen = {one}
    while heap:
        _, m, parent, var = heapq.heappop(heap)
        if any(_divides(l, m) for l in leads):
            continue
        if parent is None:
            vec = _reduce(ctx, {m: 1}, G, grevlex)
        else:
            shifted = {}
            for mm, c in nf_cache[parent].items():
                t = list(mm)
                t[var] += 1
                shifted[tuple(t)] = c
            vec = _reduce(ctx, shifted, G, grevlex)
        nf_cache[m] = vec
        v = dict(vec)
        combo = {m: 1}
        for piv in order:
            c = v.get(piv)
            if not c:
                continue
            rv, rc = rows[piv]
            for mm, x in rv.items():
                y = sub(v.get(mm, 0), mul(c, x))
                if y:
                    v[mm] = y
                else:
                    v.pop(mm, None)
            for mm, x in rc.items():
                y = sub(combo.get(mm, 0), mul(c, x))
                if y:
                    combo[mm] = y
                else:
                    combo.pop(mm, None)
        if not v:
            new_basis.append(combo)
            leads.append(m)
            continue
        piv = max(v, key=grevlex)
        s = inv(v[piv])
        rows[piv] = ({mm: mul(s, x) for mm, x in v.items()}, {mm: mul(s, x) for mm, x in combo.items()})
        # keep earlier rows reduced at the new pivot so the sweep stays valid
        for other in order:
            rv, rc = rows[other]
            c = rv.get(piv)
            if c:
                nv, nc = dict(rv), dict(rc)
                for mm, x in rows[piv][0].items():
                    y = sub(nv.get(mm, 0), mul(c, x))
                    if y:
                        nv[mm] = y
                    else:
                        nv.pop(mm, None)
                for mm, x in rows[piv][1].items():
                    y = sub(nc.get(mm, 0), mul(c, x))
                    if y:
                        nc[mm] = y
                    else:
                        nc.pop(mm, None)
                rows[other] = (nv, nc)
        order.append(piv)
        for i in range(n):
            t = list(m)
            t[i] += 1
            t = tuple(t)
            if t not in seen:
                seen.add(t)
                heapq.heappush(heap, (key_to(t), t, m, i))
    new_basis.sort(key=lambda t: key_to(max(t, key=key_to)))
    return new_basis


def lex_basis(gens: list[MultiPoly]) -> list[MultiPoly]:
    """Reduced lex Groebner basis of a zero-dimensional ideal.

    The grevlex basis is computed first and converted by linear algebra in
    the finite-dimensional quotient ring, which avoids the coefficient and
    degree blow-up of running Buchberger directly in lex.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("the zero ideal is not zero-dimensional")
    ctx, vars = _check_ring(gens)
    key = ORDERS["grevlex"]
    G = [_Poly(t, key) for t in _groebner(ctx, [g.terms for g in gens], key)]
    if len(G) == 1 and all(e == 0 for e in G[0].lm):
        return [MultiPoly._raw(ctx, vars, {G[0].lm: 1})]
    _staircase_check(G, len(vars), vars)
    return [MultiPoly._raw(ctx, vars, t) for t in _fglm(ctx, G, len(vars), ORDERS["lex"])]


# --- zero-dimensional solving ----------------------------------------------------------

@dataclass(frozen=True)
class VarietyPoint:
    ctx: FieldCtx
    coords: dict = field(hash=False)

    def key(self, vars) -> tuple[int, ...]:
        return tuple(self.coords[v].code for v in vars)

    def embed(self, target: FieldCtx) -> VarietyPoint:
        emb = embedding(self.ctx, target)
        return VarietyPoint(target, {v: emb(x) for v, x in self.coords.items()})


class _NeedExtension(Exception):
    def __init__(self, degree: int):
        self.degree = degree


def _lcm_int(a, b):
    from math import gcd

    return a * b // gcd(a, b)


def _back_substitute(K: FieldCtx, G: list[MultiPoly], vars, rng) -> list[dict]:
    n = len(vars)
    # G_i: basis elements whose smallest-index variable is i
    layers: list[list[dict]] = [[] for _ in range(n)]
    for g in G:
        first = min(i for m in g.terms for i, e in enumerate(m) if e)
        layers[first].append(g.terms)
    add, mul, pw = K.add, K.mul, K.pow
    partial: list[dict[int, int]] = [{}]
    for i in range(n - 1, -1, -1):
        nxt = []
        for pt in partial:
            h: list[int] = []
            for terms in layers[i]:
                uni: dict[int, int] = {}
                for m, c in terms.items():
                    for j in range(i + 1, n):
                        if m[j]:
                            c = mul(c, pw(pt[j], m[j]))
                    if c:
                        uni[m[i]] = add(uni.get(m[i], 0), c)
                coeffs = [0] * (max(uni, default=-1) + 1)
                for e, c in uni.items():
                    coeffs[e] = c
                coeffs = _trim(coeffs)
                h = _gcd(K, h, coeffs)
                if len(h) == 1:
                    break
            if len(h) <= 1:
                continue
            for root in _roots_or_extend(K, h, rng):
                q = dict(pt)
                q[i] = root
                nxt.append(q)
        partial = nxt
        if not partial:
            break
    return partial


def _roots_or_extend(K: FieldCtx, h: list[int], rng) -> list[int]:
    roots = []
    for g, _ in _squarefree(K, h):
        for part, d in _distinct_degree(K, g):
            if d > 1:
                raise _NeedExtension(K.degree * d)
            roots.extend(K.neg(f[0]) for f in _equal_degree(K, _monic(K, part), 1, rng))
    return sorted(roots)


def solve_zero_dimensional(gens: list[MultiPoly], seed: int = 0, basis: list[MultiPoly] | None = None):
    """All solutions over the algebraic closure of a zero-dimensional system.

    Returns ``(points, K)`` where ``K`` is the smallest canonical extension of
    the coefficient field containing every coordinate of every solution.
    A precomputed lex ``basis`` may be passed to skip the Groebner step.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens and basis is None:
        raise NotZeroDimensional("the zero ideal is not zero-dimensional")
    ctx, vars = _check_ring(gens if gens else basis)
    G = basis if basis is not None else lex_basis(gens)
    if len(G) == 1 and all(e == 0 for e in G[0].leading_monomial("lex")):
        return [], ctx
    n = len(vars)
    for i in range(n):
        if not any(
            g.leading_monomial("lex")[i] > 0 and sum(g.leading_monomial("lex")) == g.leading_monomial("lex")[i]
            for g in G
        ):
            raise NotZeroDimensional(f"variable {vars[i]} is not bounded by the ideal")
    degree = ctx.degree
    while True:
        K = make_field(ctx.p, degree)
        GK = [g.embed(K) for g in G]
        try:
            raw = _back_substitute(K, GK, vars, random.Random(seed))
            break
        except _NeedExtension as ext:
            degree = _lcm_int(degree, ext.degree)
            log.debug("extending solving field to degree %d", degree)
    points = [VarietyPoint(K, {vars[i]: FieldElement(K, pt[i]) for i in range(n)}) for pt in raw]
    points.sort(key=lambda P: P.key(vars))
    return points, K
