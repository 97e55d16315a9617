"""Degree-2 elliptic quotients of a canonical genus-4 curve V(Q, P).

A quotient corresponds to a hyperplane U = {a . xi = 0} of the space of
linear forms for which I cap k[U] is generated by a cubic R = P - L Q,
L = b1 x + b2 y + b3 z + b4 w.  Normalizing the last nonzero coordinate of
``a`` to 1 gives four cases A-D; in each case the ten coefficients of R on
monomials containing W must vanish, which is a zero-dimensional system in
(a1, a2, a3, b1, b2, b3, b4).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .canonical_model import VARS
from .errors import NotZeroDimensional
from .field_tower import FieldCtx, common_field, embedding
from .multipoly import MultiPoly, lex_basis, solve_zero_dimensional

__all__ = [
    "EllipticQuotient",
    "PARAMS",
    "CASES",
    "case_system",
    "compute_EQ",
    "substitute_linear",
    "cubic_in_new_basis",
]

log = logging.getLogger(__name__)

PARAMS = ("a1", "a2", "a3", "b1", "b2", "b3", "b4")
NEW = ("X", "Y", "Z", "W")
BIG = PARAMS + NEW

# images of (x, y, z, w) as {new variable: 1 or parameter name}, pins, and
# the rows of U as {column: 1 or "-param"}
CASES = {
    "A": {
        "images": ({"X": 1, "W": "a1"}, {"Y": 1, "W": "a2"}, {"Z": 1, "W": "a3"}, {"W": 1}),
        "pins": {},
        "rows": ({0: 1, 3: "-a1"}, {1: 1, 3: "-a2"}, {2: 1, 3: "-a3"}, {3: 1}),
        "a": ("a1", "a2", "a3", 1),
    },
    "B": {
        "images": ({"X": 1, "W": "a1"}, {"Y": 1, "W": "a2"}, {"W": 1}, {"Z": 1}),
        "pins": {"a3": 1},
        "rows": ({0: 1, 2: "-a1"}, {1: 1, 2: "-a2"}, {3: 1}, {2: 1}),
        "a": ("a1", "a2", 1, 0),
    },
    "C": {
        "images": ({"X": 1, "W": "a1"}, {"W": 1}, {"Y": 1}, {"Z": 1}),
        "pins": {"a2": 1, "a3": 0},
        "rows": ({0: 1, 1: "-a1"}, {2: 1}, {3: 1}, {1: 1}),
        "a": ("a1", 1, 0, 0),
    },
    "D": {
        "images": ({"W": 1}, {"X": 1}, {"Y": 1}, {"Z": 1}),
        "pins": {"a1": 1, "a2": 0, "a3": 0},
        "rows": ({1: 1}, {2: 1}, {3: 1}, {0: 1}),
        "a": (1, 0, 0, 0),
    },
}


@dataclass(frozen=True)
class EllipticQuotient:
    """An element of EQ(H): hyperplane datum a, linear form datum b, basis U.

    ``basis`` rows give X, Y, Z, W as combinations of x, y, z, w.  Vectors are
    tuples of codes in ``ctx``.
    """

    ctx: FieldCtx
    a_vec: tuple
    b_vec: tuple
    basis: tuple
    case_tag: str

    def embed(self, target: FieldCtx) -> EllipticQuotient:
        if target is self.ctx:
            return self
        m = embedding(self.ctx, target).map_code
        return EllipticQuotient(
            target,
            tuple(m(c) for c in self.a_vec),
            tuple(m(c) for c in self.b_vec),
            tuple(tuple(m(c) for c in row) for row in self.basis),
            self.case_tag,
        )

    def sort_key(self):
        return (self.a_vec, self.b_vec)

    def cubic(self, Q: MultiPoly, P: MultiPoly) -> MultiPoly:
        """R = P - L Q in x, y, z, w over ``ctx``."""
        Qk, Pk = Q.embed(self.ctx), P.embed(self.ctx)
        L = MultiPoly(self.ctx, VARS, {tuple(int(i == j) for j in range(4)): b for i, b in enumerate(self.b_vec)})
        return Pk - L * Qk

    def to_json(self) -> dict:
        return {
            "case": self.case_tag,
            "a": [list(self.ctx.coeffs(c)) for c in self.a_vec],
            "b": [list(self.ctx.coeffs(c)) for c in self.b_vec],
        }


def substitute_linear(f: MultiPoly, images: list[MultiPoly]) -> MultiPoly:
    """f(images[0], images[1], ...) for a polynomial f in len(images) variables."""
    if not images:
        return f
    target_vars = images[0].vars
    ctx = images[0].ctx
    cache: dict[tuple[int, int], MultiPoly] = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = images[i] ** e
        return cache[key]

    out = MultiPoly.constant(ctx, target_vars, 0)
    for m, c in f.terms.items():
        term = MultiPoly._raw(ctx, target_vars, {(0,) * len(target_vars): c})
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def _case_images(ctx: FieldCtx, tag: str) -> list[MultiPoly]:
    images = []
    for img in CASES[tag]["images"]:
        poly = MultiPoly.constant(ctx, BIG, 0)
        for new, coeff in img.items():
            term = MultiPoly.var(ctx, BIG, new)
            if coeff != 1:
                term = term * MultiPoly.var(ctx, BIG, coeff)
            poly = poly + term
        images.append(poly)
    return images


def case_system(Q: MultiPoly, P: MultiPoly, case_tag: str) -> tuple[list[MultiPoly], dict]:
    """Generators in (a1, a2, a3, b1, ..., b4) for one case, plus the case template."""
    ctx = Q.ctx
    images = _case_images(ctx, case_tag)
    Qs = substitute_linear(Q, images)
    Ps = substitute_linear(P, images)
    L = MultiPoly.constant(ctx, BIG, 0)
    for k in range(4):
        L = L + MultiPoly.var(ctx, BIG, f"b{k + 1}") * images[k]
    R = Ps - L * Qs
    npar = len(PARAMS)
    coeffs: dict[tuple, dict] = {}
    for m, c in R.terms.items():
        new_part = m[npar:]
        if new_part[3] == 0:
            continue
        coeffs.setdefault(new_part, {})[m[:npar]] = c
    gens = []
    for key in sorted(coeffs, reverse=True):
        g = MultiPoly(ctx, PARAMS, coeffs[key])
        if not g.is_zero():
            gens.append(g)
    for name, value in CASES[case_tag]["pins"].items():
        gens.append(MultiPoly.var(ctx, PARAMS, name) - value)
    return gens, CASES[case_tag]


def _quotient_from_point(K: FieldCtx, coords: dict, tag: str) -> EllipticQuotient:
    template = CASES[tag]

    def val(spec):
        if spec == 1:
            return 1
        if spec == 0:
            return 0
        if spec.startswith("-"):
            return K.neg(coords[spec[1:]].code)
        return coords[spec].code

    a = tuple(val(s) for s in template["a"])
    b = tuple(coords[f"b{k}"].code for k in range(1, 5))
    rows = []
    for row in template["rows"]:
        r = [0] * 4
        for col, spec in row.items():
            r[col] = val(spec)
        rows.append(tuple(r))
    return EllipticQuotient(K, a, b, tuple(rows), tag)


def cubic_in_new_basis(eq: EllipticQuotient, Q: MultiPoly, P: MultiPoly) -> MultiPoly:
    """R expressed in X, Y, Z, W via (x, y, z, w) = (X, Y, Z, W) U^{-T}."""
    from .linalg import inverse

    K = eq.ctx
    Uinv = inverse(K, [list(r) for r in eq.basis])
    # x_j = sum_i (U^{-1})_{j i} X_i
    images = []
    for j in range(4):
        images.append(MultiPoly(K, NEW, {tuple(int(t == i) for t in range(4)): Uinv[j][i] for i in range(4)}))
    return substitute_linear(eq.cubic(Q, P), images)


def _valid(eq: EllipticQuotient, Q: MultiPoly, P: MultiPoly) -> bool:
    R = cubic_in_new_basis(eq, Q, P)
    if R.is_zero():
        log.warning("discarding quotient with vanishing cubic (case %s)", eq.case_tag)
        return False
    if any(m[3] for m in R.terms):
        raise AssertionError("quotient cubic still involves W")
    return True


def compute_EQ(Q: MultiPoly, P: MultiPoly, seed: int = 0) -> tuple[list[EllipticQuotient], FieldCtx]:
    """EQ(H) over the smallest common field reached by the four case systems."""
    found = []
    for tag in "ABCD":
        gens, _ = case_system(Q, P, tag)
        G = lex_basis(gens)
        try:
            points, K = solve_zero_dimensional(gens, seed=seed, basis=G)
        except NotZeroDimensional:
            log.error("case %s system is not zero-dimensional", tag)
            raise
        found.extend(_quotient_from_point(K, pt.coords, tag) for pt in points)
    K = common_field([Q.ctx] + [e.ctx for e in found])
    quotients = [e.embed(K) for e in found]
    quotients = [e for e in quotients if _valid(e, Q, P)]
    quotients.sort(key=lambda e: ("ABCD".index(e.case_tag), e.sort_key()))
    return quotients, K
