"""Klt / plt / lc verdicts read off a log resolution."""

from pairsing import classify_pair, fermat_model, kollar_example_model, node_model, a_surface_model
from pairsing.singularities import delta_prime, exceptional_discrepancies

# The hypersurface z_1^d + ... + z_n^d = 0 in C^n is resolved by one blow-up.
# E appears in f^*Y with coefficient d and in K_{X'/X} with coefficient n - 1,
# so its discrepancy is n - 1 - d.
for n in (3, 4):
    for d in (2, 3, 4, 5):
        m = fermat_model(n, d)
        pc = classify_pair(m)
        print(f"n={n} d={d}  a(E)={str(exceptional_discrepancies(m)['E']):>2}  {pc.verdict.value}")

# A node on a smooth surface: E gets coefficient exactly 1, the pair is lc but not plt.
print(delta_prime(node_model()))
print(classify_pair(node_model()))

# Du Val singularities are crepant, so the pair with a smooth curve through them stays plt.
for m in range(2, 6):
    print("A", m - 1, classify_pair(a_surface_model(m)).verdict.value)

# A non-effective boundary can make the pair far from lc even when Y is smooth.
pc = classify_pair(kollar_example_model())
print(pc.verdict.value, "witness", pc.witness, "discrepancy", pc.witness_discrepancy)
