"""Adjoint ideals from vanishing orders, and the same answer from integrability exponents."""

from fractions import Fraction

from pairsing import BoundarySpec, blowup_chart, epsilon_threshold, fermat_model, is_trivial, node_model, vanishing_orders
from pairsing.adjoint import lambda_exponents, monomial_membership, monomial_membership_analytic
from pairsing.resolution import identity_model

# Node: order 1 along E, so the ideal is the maximal ideal at the node.
m = node_model()
print(vanishing_orders(m))
chart = blowup_chart(m, 2)
for mono in ([0, 0], [1, 0], [0, 1], [2, 3]):
    g = chart.germ(mono)
    print(mono, monomial_membership(m, chart, g), monomial_membership_analytic(m, chart, g))

# Triviality of the ideal is plt-ness of the pair.
for n, d in [(3, 2), (3, 3), (4, 5)]:
    print(n, d, vanishing_orders(fermat_model(n, d)).required_orders, is_trivial(fermat_model(n, d)))

# eps0 bounds how far the boundary can be inflated before a threshold jumps.
for b in ("1/2", "3/4", "1/3"):
    m = identity_model(BoundarySpec.of({"H": b}), y_meets=["H"])
    print("b =", b, " eps0 =", epsilon_threshold(m))
print(epsilon_threshold(fermat_model(3, 2)))

# The integrability exponents at eps = 1/2 for g = x on the node.
m = node_model()
print(lambda_exponents(m, blowup_chart(m, 2), blowup_chart(m, 2).germ([1, 0]), Fraction(1, 2)))
