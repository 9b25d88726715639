"""The different on the normalization of Y, and inversion of adjunction."""

from fractions import Fraction

from pairsing import a_surface_model, different, fermat_model, inversion_check, kollar_example_model, node_model
from pairsing.adjunction import different_zero, gamma, klt_of_different, klt_of_different_downstairs

# On xy = z^m the curve y = z = 0 picks up (1 - 1/m) at the singular point.
for m in range(2, 7):
    diff = different(a_surface_model(m))
    print(m, diff, diff.coefficient("p") == 1 - Fraction(1, m))

# The node normalizes to two points over the origin, each with coefficient 1.
print(different(node_model()))

# For n >= 3 the cone is normal and E meets Y' in a curve over the vertex:
# the different is 0, but the restricted divisor upstairs still sees E.
m = fermat_model(3, 3)
print("Diff(0) =", different(m), "  Gamma =", gamma(m).on_yprime)
print("downstairs:", klt_of_different_downstairs(m).verdict.value, " upstairs:", klt_of_different(m).verdict.value)

# Adding half a general hyperplane through the vertex.
m = fermat_model(3, 2, "1/2")
print(different(m), "=", different_zero(m), "+ (1/2) H|Y")
print(inversion_check(m).to_json())

# With a non-effective boundary the two sides disagree and the check says so.
print(inversion_check(kollar_example_model()).to_json())
