from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from howessp.errors import CompositeOrSmallPrime, MixedContexts, NotAnExtension
from howessp.field_tower import (
    _canonical_modulus,
    embedding,
    extend_field,
    frobenius,
    make_base_field,
    make_field,
    make_prime_field,
    sqrt,
)
from howessp.unipoly import UniPoly, factor

# one field per arithmetic backend: operation tables, Zech logs, plain polynomials
BACKEND_FIELDS = [(5, 2), (5, 4), (11, 4), (29, 4), (7, 3)]


def test_base_field_moduli():
    assert make_base_field(5).modulus == (2, 0, 1)
    assert make_base_field(7).modulus == (1, 0, 1)
    assert make_base_field(5).serialize() == {"p": 5, "level": 1, "modulus": [2, 0, 1]}


@pytest.mark.parametrize("bad", [4, 3, 2, 1, 0, -7, 9, 25])
def test_rejects_small_or_composite(bad):
    with pytest.raises(CompositeOrSmallPrime):
        make_base_field(bad)


def test_fields_are_interned_and_reproducible():
    assert make_field(13, 4) is make_field(13, 4)
    assert _canonical_modulus(13, 4) == make_field(13, 4).modulus


@pytest.mark.parametrize("p,n", [(5, 2), (7, 2), (11, 2), (5, 4), (13, 4), (7, 6)])
def test_modulus_is_irreducible(p, n):
    m = UniPoly(make_prime_field(p), list(make_field(p, n).modulus))
    fac = factor(m)
    assert len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == n


def test_extend_by_one_is_identity():
    F25 = make_base_field(5)
    big, emb = extend_field(F25, 1)
    assert big is F25
    for x in F25.elements():
        assert emb(x) == x


def test_extend_by_two_maps_generator_to_root():
    F25 = make_base_field(5)
    big, emb = extend_field(F25, 2)
    assert big.order == 625
    g = emb(F25.gen())
    assert g * g == big.element(-2)


@pytest.mark.parametrize("p,d", [(5, 2), (7, 2), (5, 3), (11, 2)])
def test_embedding_is_a_ring_map(p, d):
    small = make_base_field(p)
    big, emb = extend_field(small, d)
    rng = random.Random(p * d)
    for _ in range(100):
        u, v = small.random_element(rng), small.random_element(rng)
        assert emb(u * v) == emb(u) * emb(v)
        assert emb(u + v) == emb(u) + emb(v)
    assert emb(small.one()) == big.one()


def test_embeddings_compose_through_the_tower():
    F2, F4, F8 = make_field(7, 2), make_field(7, 4), make_field(7, 8)
    e24, e48, e28 = embedding(F2, F4), embedding(F4, F8), embedding(F2, F8)
    for x in F2.elements():
        assert e48(e24(x)) == e28(x)


def test_embedding_needs_an_extension():
    with pytest.raises(NotAnExtension):
        embedding(make_field(5, 4), make_field(5, 2))
    with pytest.raises(NotAnExtension):
        embedding(make_field(5, 2), make_field(7, 4))


def test_mixed_contexts_rejected():
    with pytest.raises(MixedContexts):
        make_base_field(5).one() + make_base_field(7).one()


def test_frobenius_examples():
    F25 = make_base_field(5)
    g = F25.gen()
    assert frobenius(g, 1) == 4 * g
    for x in F25.elements():
        assert frobenius(x, 2) == x
    for c in range(5):
        assert frobenius(F25.element(c), 1) == F25.element(c)


@pytest.mark.parametrize("p,n", BACKEND_FIELDS)
def test_frobenius_is_a_homomorphism_fixing_the_prime_field(p, n):
    K = make_field(p, n)
    rng = random.Random(n)
    for _ in range(100):
        u, v = K.random_element(rng), K.random_element(rng)
        assert frobenius(u * v) == frobenius(u) * frobenius(v)
        assert frobenius(u + v) == frobenius(u) + frobenius(v)
        assert frobenius(u, n) == u
        assert (frobenius(u) == u) == u.in_prime_field()


def test_sqrt_examples():
    F5 = make_prime_field(5)
    assert sqrt(F5.zero()) == F5.zero()
    assert sqrt(F5.element(4)) == F5.element(2)
    assert sqrt(F5.element(3)) is None
    F25 = make_base_field(5)
    r = sqrt(embedding(F5, F25)(F5.element(3)))
    assert r is not None and r * r == F25.element(3)


@pytest.mark.parametrize("p,n", BACKEND_FIELDS)
def test_sqrt_of_squares(p, n):
    K = make_field(p, n)
    rng = random.Random(p + n)
    for _ in range(50):
        x = K.random_element(rng)
        r = sqrt(x * x)
        assert r * r == x * x
        assert r.code <= (-r).code


@pytest.mark.parametrize("p,n", BACKEND_FIELDS)
def test_field_axioms(p, n):
    K = make_field(p, n)

    @settings(max_examples=1000)
    @given(st.integers(0, K.order - 1), st.integers(0, K.order - 1), st.integers(0, K.order - 1))
    def check(a, b, c):
        u, v, w = K.from_code(a), K.from_code(b), K.from_code(c)
        assert (u + v) + w == u + (v + w)
        assert u * (v + w) == u * v + u * w
        assert (u * v) * w == u * (v * w)
        assert u - u == K.zero()
        if a:
            assert u * u.inverse() == K.one()

    check()


@pytest.mark.parametrize("p,n", BACKEND_FIELDS)
def test_pow_matches_repeated_multiplication(p, n):
    K = make_field(p, n)
    rng = random.Random(7)
    for _ in range(20):
        x = K.random_element(rng)
        k = rng.randrange(0, 40)
        acc = K.one()
        for _ in range(k):
            acc = acc * x
        assert x ** k == acc
    # the multiplicative group has order q - 1
    x = K.from_code(K.order - 1)
    assert x ** (K.order - 1) == K.one()


def test_element_serialization_round_trip():
    K = make_field(11, 4)
    rng = random.Random(3)
    for _ in range(50):
        x = K.random_element(rng)
        data = x.to_json()
        assert len(data) == 4 and all(0 <= c < 11 for c in data)
        assert K.element(data) == x
