"""The smallest interesting case, p = 5, from search to classification.

Run with ``python3 demos/02_p5_walkthrough.py``.
"""

from __future__ import annotations

from howessp.canonical_model import canonical
from howessp.elliptic_quotients import compute_EQ
from howessp.howe_search import enumerate_howe, validate_witness
from howessp.isomorphism import compute_VH
from howessp.pipeline import classify_params
from howessp.supersingular import catalog_for_prime

p = 5

# Step 1: the supersingular curves.  The search uses one Weierstrass model per
# root of the Hasse polynomial.
for entry in catalog_for_prime(p, distinct_j=False):
    print("supersingular model: t0 =", entry.t0, " j =", entry.j0, " (A, B) =", (entry.A0, entry.B0))

# Step 2: pairs of models and values of (lam, mu) with nu = 1 whose genus-4
# Howe curve has a vanishing Cartier-Manin matrix.
H = enumerate_howe(p)
print(f"\n{len(H)} superspecial Howe tuples at p = {p}")
hp = H[0]
print("first tuple: lam =", hp.lam, " mu =", hp.mu)
print("f1 =", hp.f1())
print("f2 =", hp.f2())
print("independent validation:", validate_witness(hp))

# Step 3: the canonical model, a quadric and a cubic in P^3.
m = canonical(hp)
print("\nquadric Q =", m.Q)
print("cubic   P =", m.P)

# Step 4: elliptic quotients.  At p = 5 there are ten, defined over F_{5^4}.
eqs, KH = compute_EQ(m.Q, m.P)
print(f"\n#EQ = {len(eqs)} over {KH}")
for e in eqs[:3]:
    print("  case", e.case_tag, "a =", e.a_vec, "b =", e.b_vec)

# Step 5: ramification tuples from admissible pairs of quotients.
V, L = compute_VH(m, eqs)
print(f"\n{len(V)} ramification tuples over {L}; the first one:", V[0].roots)

# Step 6: all nine tuples describe one curve up to isomorphism.
result, analyses = classify_params(H)
print(f"\nclasses: n = {result.n}, members = {result.classes}")
