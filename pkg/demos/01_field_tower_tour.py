"""A short walk through the finite-field layer.

Run with ``python3 demos/01_field_tower_tour.py``.
"""

from __future__ import annotations

import random

from howessp.field_tower import embedding, frobenius, make_base_field, make_field, sqrt
from howessp.supersingular import hasse_polynomial
from howessp.unipoly import UniPoly, factor, roots_in_field

# Every computation starts in F_{p^2}.  Elements are stored as integer codes,
# and the modulus of each field is chosen by a fixed rule, so two runs always
# agree on what "code 17" means.
K = make_base_field(11)
print("base field:", K)

a = K.from_code(17)
b = K.from_code(42)
print("a * b =", a * b, "  a / b =", a / b, "  a^(p^2 - 1) =", a ** (K.order - 1))

# Larger fields are built on demand, and the embedding from F_{p^2} is canonical.
L = make_field(11, 4)
emb = embedding(K, L)
print("image of a in", L, "is", emb(a))

# The p^2-Frobenius fixes exactly the image of F_{p^2}.
x = L.from_code(1234)
print("x fixed by p^2-Frobenius?", frobenius(x, 2) == x, "  emb(a) fixed?", frobenius(emb(a), 2) == emb(a))

# Every element of F_{p^2} is a square in F_{p^4}.
print("sqrt of a inside F_{p^4}:", sqrt(emb(a)))

# The Hasse polynomial lists the supersingular Legendre parameters.
H = hasse_polynomial(11).embed(K)
print("H_11 =", H)
print("its factors over F_{11^2}:", factor(H))
print("its roots:", roots_in_field(H))

# Roots of a polynomial that only splits further up the tower.
rng = random.Random(0)
f = UniPoly.from_codes(K, [K.random_code(rng) for _ in range(5)] + [1])
for deg in (2, 4, 8):
    print(f"roots of a random quintic in F_(11^{deg}):", len(roots_in_field(f, make_field(11, deg))))
