from __future__ import annotations

import random

import pytest

from howessp.canonical_model import VARS, canonical, homogenized_cubics, q_form
from howessp.elliptic_quotients import substitute_linear
from howessp.errors import NotHoweType
from howessp.field_tower import make_base_field, make_field, sqrt, embedding
from howessp.howe_search import HoweParams
from howessp.multipoly import MultiPoly

from helpers import howe_set


def _random_params(K, rng, lam=None):
    vals = [K.random_element(rng) for _ in range(4)]
    lam = K.random_element(rng) if lam is None else lam
    mu = K.from_code(rng.randrange(1, K.order))
    nu = K.from_code(rng.randrange(1, K.order))
    return HoweParams(*vals, lam, mu, nu)


def test_q_vanishes_for_identical_cubics():
    K = make_base_field(7)
    rng = random.Random(1)
    a, b, mu = K.random_element(rng), K.random_element(rng), K.from_code(5)
    hp = HoweParams(a, b, a, b, K.zero(), mu, mu)
    assert q_form(hp).is_zero()


def test_q_example():
    K = make_base_field(11)
    z, one = K.zero(), K.one()
    q = q_form(HoweParams(z, z, z, z, one, one, one))
    assert q.terms == {(2, 0): 3, (1, 1): K.element(-3).code, (0, 2): 1}


def test_q_closed_form_matches_division():
    rng = random.Random(2)
    for _ in range(100):
        K = make_base_field(rng.choice([5, 7, 11, 13]))
        hp = _random_params(K, rng)
        f1, f2 = homogenized_cubics(hp)
        diff = f1 - f2
        assert all(m[1] >= 1 for m in diff.terms)  # no pure x^3 term: division by y is exact
        quotient = MultiPoly(K, ("x", "y"), {(m[0], m[1] - 1): c for m, c in diff.terms.items()})
        assert quotient == q_form(hp)


def test_model_shape():
    for hp in howe_set(11)[:10]:
        m = canonical(hp)
        assert all(mono[3] == 0 for mono in m.P.terms)
        assert m.Q.terms[(0, 0, 2, 0)] == 1
        assert m.Q.terms[(0, 0, 0, 2)] == hp.ctx.element(-1).code
        assert m.Q.total_degree() == 2 and m.P.total_degree() == 3


def test_non_howe_rejected():
    K = make_base_field(5)
    one = K.one()
    with pytest.raises(NotHoweType):
        canonical(HoweParams(one, one, one, one, K.zero(), one, one))


def test_scaling_relates_the_models():
    """(x, y, z, w) -> (x, y/c, sqrt(c) z, sqrt(c) w) carries the scaled model to the original."""
    rng = random.Random(3)
    K = make_base_field(11)
    L = make_field(11, 4)
    emb = embedding(K, L)
    for hp in rng.sample(list(howe_set(11)), 8):
        c = K.from_code(rng.randrange(1, K.order))
        m0, mc = canonical(hp), canonical(hp.scaled(c))
        s = sqrt(emb(c))
        assert s is not None
        x, y, z, w = (MultiPoly.var(L, VARS, v) for v in VARS)
        images = [x, y * emb(c).inverse(), z * s, w * s]
        Qc = substitute_linear(mc.Q.embed(L), images)
        Pc = substitute_linear(mc.P.embed(L), images)
        assert Qc == m0.Q.embed(L) * emb(c)
        assert Pc == m0.P.embed(L)
