"""Adjoint ideal ``Adj(X, Y; B) = f_* O(K_{X'} - floor(f^*(K_X + Y + B)) + Y')``.

On a resolution the ideal is cut out by vanishing orders along the
divisors of ``X'``: a germ ``g`` belongs to it iff
``ord_{E}(g o f) >= floor(b_E + c_E - k_E)`` for every ``E != Y'``.
Monomial germs are tested chart by chart, either through these floor
conditions or through the ``lambda_i(eps)`` integrability exponents of the
weighted integral that defines the analytic adjoint ideal; the two routes
must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .resolution import SncModel, require_valid

UNBOUNDED = math.inf


@dataclass(frozen=True)
class VanishingOrderSpec:
    required_orders: Mapping[str, int]

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.required_orders.values())


@dataclass(frozen=True)
class MonomialGerm:
    """Exponents of ``g o f = prod w_i^{alpha_i}`` in a chart of ``X'``."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(int(a) for a in self.exponents))
        if any(a < 0 for a in self.exponents):
            raise ValueError("monomial exponents must be >= 0")

    def __mul__(self, other: MonomialGerm) -> MonomialGerm:
        if len(other.exponents) != len(self.exponents):
            raise ValueError("germs live in charts of different dimension")
        return MonomialGerm(tuple(a + b for a, b in zip(self.exponents, other.exponents)))


@dataclass(frozen=True)
class Chart:
    """A chart ``(w_1, ..., w_n)`` of ``X'`` where the relevant divisors are
    coordinate hyperplanes.

    ``coordinates[i]`` names the record ``{w_i = 0}`` or is ``None`` for a
    free coordinate.  ``pullback`` optionally gives, for each coordinate
    ``x_j`` of ``X``, the exponents of ``x_j o f`` in the ``w`` (up to a
    unit), so monomials on ``X`` can be pulled back.
    """

    coordinates: tuple[str | None, ...]
    pullback: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        if self.pullback is not None:
            object.__setattr__(self, "pullback", tuple(tuple(int(e) for e in row) for row in self.pullback))

    def germ(self, x_exponents: Sequence[int]) -> MonomialGerm:
        """Pull back ``prod x_j^{beta_j}`` to this chart."""
        if self.pullback is None:
            raise ValueError("chart carries no pullback data")
        if len(x_exponents) != len(self.pullback):
            raise ValueError("monomial has the wrong number of variables")
        n = len(self.coordinates)
        alpha = [0] * n
        for beta, row in zip(x_exponents, self.pullback):
            for i in range(n):
                alpha[i] += beta * row[i]
        return MonomialGerm(tuple(alpha))


def _check_chart(m: SncModel, chart: Chart, g: MonomialGerm | None = None) -> None:
    ids = set(m.ids())
    named = [c for c in chart.coordinates if c is not None]
    if len(named) != len(set(named)):
        raise ValueError("inconsistent chart data: a divisor appears twice")
    stray = [c for c in named if c not in ids]
    if stray:
        raise ValueError(f"inconsistent chart data: unknown divisors {stray}")
    if chart.pullback is not None and any(len(row) != len(chart.coordinates) for row in chart.pullback):
        raise ValueError("inconsistent chart data: pullback rows have the wrong length")
    if g is not None and len(g.exponents) != len(chart.coordinates):
        raise ValueError("inconsistent chart data: germ and chart dimensions differ")


def vanishing_orders(m: SncModel) -> VanishingOrderSpec:
    """Required order along each divisor of ``X'``: ``max(0, floor(c + b - k))``,
    with ``Y'`` exempt (its coefficient 1 is cancelled by the ``+Y'``)."""
    require_valid(m)
    y = m.strict_y.id
    orders = {
        r.id: max(0, math.floor(r.c + r.b_pullback - r.rel_canonical)) for r in m.records if r.id != y
    }
    return VanishingOrderSpec(orders)


def is_trivial(m: SncModel) -> bool:
    return vanishing_orders(m).is_trivial()


def monomial_membership(m: SncModel, chart: Chart, g: MonomialGerm) -> bool:
    """``g in Adj(X, Y; B)`` via the floor conditions in one chart."""
    _check_chart(m, chart, g)
    orders = vanishing_orders(m).required_orders
    for coord, alpha in zip(chart.coordinates, g.exponents):
        if coord is not None and alpha < orders.get(coord, 0):
            return False
    return True


def epsilon_threshold(m: SncModel) -> Fraction | float:
    """Largest ``eps0`` such that for ``0 < eps < eps0`` no threshold
    ``(1 + eps) b + c - k`` crosses an integer; ``UNBOUNDED`` if ``b = 0``
    everywhere."""
    require_valid(m)
    if not m.boundary.is_effective() or any(r.b_pullback < 0 for r in m.records):
        raise ValueError("epsilon_threshold needs an effective boundary")
    best: Fraction | float = UNBOUNDED
    for r in m.records:
        b = r.b_pullback
        if b > 0:
            e = r.c + b - r.rel_canonical
            best = min(best, (math.floor(e) + 1 - e) / b)
    return best


def lambda_exponents(m: SncModel, chart: Chart, g: MonomialGerm, eps: Fraction) -> list[tuple[Fraction, bool]]:
    """``(lambda_i(eps), strict)`` per chart coordinate.

    The weighted integral is finite iff ``lambda_i >= -1`` where ``b_i > 0``
    and ``lambda_i > -1`` elsewhere (``strict`` is True in the latter case).
    The ``Y'`` coordinate carries ``2 alpha - 1``: the ``(log|s|)^2`` factor
    makes exponent ``-1`` harmless there.
    """
    _check_chart(m, chart, g)
    y = m.strict_y.id
    out: list[tuple[Fraction, bool]] = []
    for coord, alpha in zip(chart.coordinates, g.exponents):
        if coord is None:
            out.append((Fraction(2 * alpha + 1), True))
        elif coord == y:
            out.append((Fraction(2 * alpha - 1), False))
        else:
            r = m.record(coord)
            lam = 2 * alpha - 2 * (1 + eps) * r.b_pullback - 2 * r.c + 2 * r.rel_canonical + 1
            out.append((lam, not r.b_pullback > 0))
    return out


def monomial_membership_analytic(m: SncModel, chart: Chart, g: MonomialGerm) -> bool:
    """Membership from the integrability exponents at ``eps = eps0 / 2``."""
    eps0 = epsilon_threshold(m)
    eps = Fraction(1) if eps0 == UNBOUNDED else eps0 / 2
    return all(lam > -1 if strict else lam >= -1 for lam, strict in lambda_exponents(m, chart, g, eps))


def blowup_chart(m: SncModel, n: int, exceptional: str = "E") -> Chart:
    """First standard chart of the blow-up of ``0 in C^n``:
    ``x_1 = u_1``, ``x_j = u_1 u_j``; ``E = {u_1 = 0}``."""
    if exceptional not in m.ids():
        raise ValueError(f"model has no divisor {exceptional!r}")
    coords: list[str | None] = [exceptional] + [None] * (n - 1)
    rows = [tuple(1 if i == 0 or i == j else 0 for i in range(n)) for j in range(n)]
    return Chart(tuple(coords), tuple(rows))
