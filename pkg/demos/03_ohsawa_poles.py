"""Pole divisor of the Ohsawa measure on Y' and its local integrability."""

from pairsing import OhsawaSetup, fermat_model, is_locally_integrable, node_model, setup_for
from pairsing.divisor import QDivisor
from pairsing.numeric import weight
from pairsing.ohsawa import smooth_density_exponents, theorem_equivalence_check

# For psi = log|f|^2 the measure has poles (f^*Y - Y' - K_{X'/X})|_{Y'}.
for n, d in [(3, 2), (3, 3), (3, 4), (4, 3)]:
    v = is_locally_integrable(OhsawaSetup(fermat_model(n, d)))
    print(f"n={n} d={d}  poles {v.pole_divisor_on_yprime.to_json()}  integrable={v.integrable}")

print(is_locally_integrable(OhsawaSetup(node_model())).to_json())

# Integrability matches klt of the different over the whole Fermat grid.
print(all(theorem_equivalence_check(setup_for(fermat_model(n, d))) for n in range(2, 7) for d in range(1, 10)))

# A volume form vanishing along E cancels the pole of the borderline cone.
m = fermat_model(3, 3)
print(is_locally_integrable(OhsawaSetup(m, volume_zeros=QDivisor({"E": 1}, "X'"))).integrable)

# On a smooth hypersurface the density exponents are beta_k - 2 a_k.
print(smooth_density_exponents(weight(3, "1/3", "1/4")))
print(smooth_density_exponents(weight(2, "1/2"), [1]))
