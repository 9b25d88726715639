"""Monte-Carlo trends for psi = log|z_1^d + ... + z_n^d|^2."""

from pairsing.numeric import df_density_probe, fermat_probe

SAMPLES = 200_000

# Shells stay bounded iff d <= n - 1; d = n grows linearly in |t|.
for n, d in [(3, 2), (3, 3), (3, 4), (2, 1), (2, 2)]:
    p = fermat_probe(n, d, samples=SAMPLES)
    print(f"shells n={n} d={d}: {p.trend.value:<13}", [round(e.value, 3) for e in p.estimates])

# Mass of dV_Y / |df|^2 outside balls of radius eps around the vertex.
for n, d in [(3, 2), (3, 3), (4, 3)]:
    p = df_density_probe(n, d, samples=SAMPLES)
    print(f"tubes  n={n} d={d}: {p.trend.value:<13} expected convergent={p.expected_convergent}", [round(e.value, 2) for e in p.estimates])
