"""Ramification tuples of Howe curves and their isomorphism classification.

For two distinct quotients U1, U2 in EQ(H) the line P^1 = Proj k[U1 cap U2]
carries the branch points of both double covers E_i -> P^1.  After the
coordinate change (x_, y_, z_i, W_i) with y_ = L1 - L2 set to 1, each cubic
R_i is a quadratic in z_i whose discriminant D_i is a cubic in x_.  The six
roots of D_1 and D_2 form a tuple v_H; two curves are isomorphic exactly
when some arrangement of one tuple is an affine image of the other.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .canonical_model import VARS, CanonicalModel
from .elliptic_quotients import EllipticQuotient
from .errors import DegenerateGeometry, EmptyVH, MixedContexts
from .field_tower import FieldCtx, common_field, embedding, make_field
from .linalg import in_span, inverse, null_space, rank
from .multipoly import MultiPoly
from .unipoly import _derivative, _distinct_degree, _gcd, _linear_roots, _mul, _scale, _sub, _trim

__all__ = [
    "RamTuple",
    "AdmissibleData",
    "IsoClassification",
    "admissible_data",
    "compute_VH",
    "arrangements",
    "rank_test",
    "affine_key",
    "tuple_keys",
    "classify",
]

log = logging.getLogger(__name__)

LINE_VARS = ("xu", "yu", "zu", "Wu")


@dataclass(frozen=True)
class RamTuple:
    """Six branch values (three for each quotient) as codes in ``ctx``."""

    ctx: FieldCtx
    roots: tuple
    provenance: tuple = field(default=(), compare=False)

    def embed(self, target: FieldCtx) -> RamTuple:
        if target is self.ctx:
            return self
        m = embedding(self.ctx, target).map_code
        return RamTuple(target, tuple(m(c) for c in self.roots), self.provenance)

    def to_json(self) -> list:
        return [list(self.ctx.coeffs(c)) for c in self.roots]


@dataclass
class AdmissibleData:
    R: tuple  # the two cubics in (xu, yu, zu, Wu)
    y_vec: tuple
    x_vec: tuple
    z_vecs: tuple
    D: tuple  # the two discriminants as code lists in xu


@dataclass
class IsoClassification:
    classes: list[list[int]]
    representatives: list[int]

    @property
    def n(self) -> int:
        return len(self.classes)

    def class_of(self) -> list[int]:
        out = [0] * sum(len(c) for c in self.classes)
        for k, cls in enumerate(self.classes):
            for i in cls:
                out[i] = k
        return out


def _substitute_coords(R: MultiPoly, T: list[list[int]]) -> MultiPoly:
    """R(x, y, z, w) with (x, y, z, w) = (xu, yu, zu, Wu) T^{-1}."""
    from .elliptic_quotients import substitute_linear

    K = R.ctx
    Tinv = inverse(K, T)
    images = []
    for j in range(4):
        images.append(MultiPoly(K, LINE_VARS, {tuple(int(t == k) for t in range(4)): Tinv[k][j] for k in range(4)}))
    return substitute_linear(R, images)


def admissible_data(model: CanonicalModel, U1: EllipticQuotient, U2: EllipticQuotient) -> AdmissibleData | None:
    """Coordinate data for an admissible pair, or None when the pair is not admissible."""
    K = U1.ctx
    if U2.ctx is not K:
        raise MixedContexts("quotients over different fields")
    if U1.a_vec == U2.a_vec:
        raise ValueError("the two quotients must be distinct")
    x1, x2 = null_space(K, [list(U1.a_vec), list(U2.a_vec)])
    zs = []
    for U in (U1, U2):
        z = next((list(u) for u in U.basis[:3] if not in_span(K, [x1, x2], list(u))), None)
        if z is None:
            raise DegenerateGeometry("quotient hyperplane inside U1 cap U2")
        M = [[x1[r], x2[r], z[r], U.basis[3][r]] for r in range(4)]
        R = _substitute_coords(U.cubic(model.Q, model.P), M)
        if any(m[3] for m in R.terms):
            raise AssertionError("cubic involves W after the change of coordinates")
        if max(m[2] for m in R.terms) != 2:
            return None
        zs.append(z)
    y = [K.sub(a, b) for a, b in zip(U1.b_vec, U2.b_vec)]
    if not any(y):
        raise DegenerateGeometry("L1 = L2 for distinct quotients")
    if not in_span(K, [x1, x2], y):
        raise DegenerateGeometry("L1 - L2 is not in U1 cap U2")
    xi = next((v for v in (x1, x2) if rank(K, [v, y]) == 2), None)
    Rs, Ds = [], []
    for U, z in zip((U1, U2), zs):
        T = [[xi[r], y[r], z[r], U.basis[3][r]] for r in range(4)]
        R = _substitute_coords(U.cubic(model.Q, model.P), T)
        # set yu = 1 and split by powers of zu
        parts: dict[int, dict[int, int]] = {}
        for m, c in R.terms.items():
            d = parts.setdefault(m[2], {})
            d[m[0]] = K.add(d.get(m[0], 0), c)
        r = []
        for k in range(3):
            d = parts.get(k, {})
            coeffs = [0] * (max(d, default=-1) + 1)
            for e, c in d.items():
                coeffs[e] = c
            r.append(_trim(coeffs))
        D = _sub(K, _mul(K, r[1], r[1]), _scale(K, _mul(K, r[2], r[0]), 4 % K.p))
        Rs.append(R)
        Ds.append(D)
    return AdmissibleData(tuple(Rs), tuple(y), tuple(xi), tuple(zs), tuple(Ds))


def _squarefree_cubic(K: FieldCtx, D: list[int]) -> bool:
    return len(D) == 4 and len(_gcd(K, D, _derivative(K, D))) == 1


def compute_VH(model: CanonicalModel, eqs: list[EllipticQuotient], seed: int = 0) -> tuple[list[RamTuple], FieldCtx]:
    """All tuples v_H over ordered admissible pairs, in one common field."""
    if len(eqs) < 2:
        return [], eqs[0].ctx if eqs else model.ctx
    K = eqs[0].ctx
    pending = []
    for i, j in itertools.permutations(range(len(eqs)), 2):
        try:
            data = admissible_data(model, eqs[i], eqs[j])
        except DegenerateGeometry as exc:
            log.info("skipping pair (%d, %d): %s", i, j, exc)
            continue
        if data is None:
            continue
        if not all(_squarefree_cubic(K, D) for D in data.D):
            log.info("skipping pair (%d, %d): discriminant is not a squarefree cubic", i, j)
            continue
        pending.append(((i, j), data.D))
    # smallest extension over which every discriminant splits
    ext = 1
    for _, Ds in pending:
        for D in Ds:
            for _, d in _distinct_degree(K, [c for c in _monic_codes(K, D)]):
                ext = ext * d // _gcd_int(ext, d)
    L = make_field(K.p, K.degree * ext) if ext > 1 else K
    emb = embedding(K, L) if L is not K else None
    import random

    rng = random.Random(seed)
    tuples: dict[tuple, RamTuple] = {}
    for prov, Ds in pending:
        roots = []
        for D in Ds:
            DL = [emb.map_code(c) for c in D] if emb else D
            rs = sorted(_linear_roots(L, _monic_codes(L, DL), rng))
            roots.extend(rs)
        key = tuple(roots)
        if key not in tuples:
            tuples[key] = RamTuple(L, key, prov)
    return [tuples[k] for k in sorted(tuples)], L


def _monic_codes(K, f):
    inv = K.inv(f[-1])
    return [K.mul(c, inv) for c in f]


def _gcd_int(a, b):
    from math import gcd

    return gcd(a, b)


# --- the rank test ------------------------------------------------------------------

_PERMS3 = list(itertools.permutations(range(3)))


def arrangements(roots) -> list[tuple]:
    """The 72 rearrangements (sigma, tau, w) of a six-entry tuple."""
    halves = (roots[:3], roots[3:])
    out = []
    for w in ((0, 1), (1, 0)):
        first, second = halves[w[0]], halves[w[1]]
        for s in _PERMS3:
            for t in _PERMS3:
                out.append(tuple(first[k] for k in s) + tuple(second[k] for k in t))
    return out


def rank_test(v0: RamTuple, v: RamTuple) -> bool:
    """True iff some arrangement of v makes [v; v0; 1] have rank at most 2."""
    if v0.ctx is not v.ctx:
        raise MixedContexts("tuples over different fields")
    K = v0.ctx
    ones = [1] * 6
    for arr in arrangements(v.roots):
        if rank(K, [list(arr), list(v0.roots), ones]) <= 2:
            return True
    return False


def affine_key(K: FieldCtx, seq) -> tuple | None:
    """Normal form of a sequence under x -> alpha x + beta (first two entries sent to 0, 1)."""
    d = K.sub(seq[1], seq[0])
    if not d:
        return None
    inv = K.inv(d)
    return tuple(K.mul(K.sub(s, seq[0]), inv) for s in seq[2:])


def _conjugates(K: FieldCtx, roots: tuple) -> list[tuple]:
    """Images of a tuple under Gal(K / F_{p^2}) (powers of the p^2-Frobenius)."""
    out = [roots]
    q = K.p ** 2
    cur = roots
    for _ in range(K.degree // 2 - 1):
        cur = tuple(K.pow(c, q) for c in cur)
        out.append(cur)
    return out


def tuple_keys(tuples: list[RamTuple], K: FieldCtx) -> set:
    """Affine normal forms of every arrangement of every tuple (and its conjugates)."""
    keys = set()
    for t in tuples:
        tt = t.embed(K)
        for conj in _conjugates(K, tt.roots):
            for arr in arrangements(conj):
                k = affine_key(K, arr)
                if k is not None:
                    keys.add(k)
    return keys


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            if b < a:
                a, b = b, a
            self.parent[b] = a


def classify(records: list[list[RamTuple]]) -> IsoClassification:
    """Partition records (each given by its V_H) into isomorphism classes.

    H0 ~ H when the affine normal form of the least tuple of V_{H0} occurs
    among the normal forms of all arrangements of the tuples of V_H.  This is
    the rank condition with the reference tuple fixed on the H0 side.
    """
    if not records:
        return IsoClassification([], [])
    for k, V in enumerate(records):
        if not V:
            raise EmptyVH(f"record {k} has no ramification tuple")
    L = common_field([t.ctx for V in records for t in V])
    index: dict[tuple, list[int]] = {}
    refs = []
    for k, V in enumerate(records):
        for key in tuple_keys(V, L):
            index.setdefault(key, []).append(k)
        ref = min(V, key=lambda t: t.embed(L).roots).embed(L)
        refs.append(affine_key(L, ref.roots))
    uf = _UnionFind(len(records))
    for k, key in enumerate(refs):
        for other in index.get(key, ()):
            uf.union(k, other)
    groups: dict[int, list[int]] = {}
    for k in range(len(records)):
        groups.setdefault(uf.find(k), []).append(k)
    classes = sorted(groups.values())
    return IsoClassification(classes, [c[0] for c in classes])
