"""Shell integrals for a monomial weight and their limit as t -> -inf."""

import math

from pairsing.numeric import (
    BumpFunction,
    Extension,
    decay_reference,
    extension_independence_check,
    limit_convergence_check,
    limit_reference,
    shell_integral,
    weight,
    write_csv,
)

w = weight(2, "1/2")  # psi = log(|z_2|^2 |z_1|)
g = BumpFunction.annulus(1, 0.4, 0.6)

ref = limit_reference(w, g)
print("quadrature limit", ref)

for t in (-4, -8, -12, -16, -20):
    est = shell_integral(w, g, Extension.TAPERED, t, samples=200_000)
    print(f"t={t:>4}  {est.value:.5f} +- {est.std_error:.5f}   L - C e^(t/2) = {ref - decay_reference(w, g) * math.exp(t / 2):.5f}")

rep = limit_convergence_check(w, g, samples=200_000)
print("fitted L", rep.limit, "C", rep.amplitude, "kappa", rep.exponent, "rel err", rep.relative_error)
write_csv("shells.csv", list(zip(rep.t_grid, rep.values)))

# The limit does not care how g is extended off Y.
print(extension_independence_check(w, g, samples=200_000))
print(extension_independence_check(weight(3, "1/3", "1/4"), BumpFunction.annulus(2), samples=200_000))
