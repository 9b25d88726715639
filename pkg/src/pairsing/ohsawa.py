"""Pole divisor of the Ohsawa measure and its local integrability.

For ``psi`` with poles along ``Y + D`` and a volume form with zeros along
``Z``, the measure ``dV[psi]`` is the direct image from ``Y'`` of a measure
with poles along ``(f^*Y + f^*D - Y' - Z')|_{Y'}``, where ``Z'`` collects
the zeros of ``f^* dV_X``: the Jacobian ``K_{X'/X}`` plus the pullback of
any zeros ``dV_X`` already had.  Twisting by ``e^{-phi_B}`` adds
``(f^*B)|_{Y'}``.  Since that divisor is snc on ``Y'``, the measure is
locally integrable exactly when every coefficient is < 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .adjunction import klt_of_different, restrict_to_yprime
from .divisor import PrimeId, QDivisor, RationalLike, as_rational, max_coefficient
from .resolution import XPRIME_NS, BoundarySpec, SncModel, require_valid
from .singularities import Verdict


@dataclass(frozen=True)
class OhsawaSetup:
    """Inputs for the pole computation.

    ``aux_pullback`` is ``f^*D`` written on ``X'`` (one coefficient per
    record); ``volume_zeros`` defaults to the model's own ``Z``.  The twist,
    when given, must be the model's boundary: its pullback coefficients are
    the ones stored on the records.
    """

    model: SncModel
    aux_pullback: QDivisor = field(default_factory=lambda: QDivisor({}, XPRIME_NS))
    volume_zeros: QDivisor | None = None
    twist_B: BoundarySpec | None = None

    @property
    def zeros(self) -> QDivisor:
        return self.model.volume_zero_divisor if self.volume_zeros is None else self.volume_zeros


@dataclass(frozen=True)
class IntegrabilityVerdict:
    integrable: bool
    pole_divisor_on_yprime: QDivisor
    blocking_curve: PrimeId | None

    def to_json(self) -> dict:
        return {
            "integrable": self.integrable,
            "pole_divisor": self.pole_divisor_on_yprime.to_json(),
            "blocking_curve": None if self.blocking_curve is None else self.blocking_curve.name,
        }


def _check_setup(s: OhsawaSetup) -> None:
    m = s.model
    require_valid(m)
    ids = set(m.ids())
    for div, what in ((s.aux_pullback, "D"), (s.zeros, "Z")):
        if div.namespace != XPRIME_NS:
            raise ValueError(f"{what} must be given on X'")
        stray = [k for k in div if k not in ids]
        if stray:
            raise ValueError(f"{what} mentions divisors not in the model: {stray}")
    if s.aux_pullback.coefficient(m.strict_y.id):
        raise ValueError("D must not contain Y")
    if not s.zeros.is_effective():
        raise ValueError("volume zeros Z must be effective")
    if s.twist_B is not None and s.twist_B != m.boundary:
        raise ValueError("twist_B must equal the model's boundary (its pullback lives on the records)")


def pole_divisor(s: OhsawaSetup) -> QDivisor:
    _check_setup(s)
    m = s.model
    y = m.strict_y.id
    twist = s.twist_B is not None
    terms: dict[str, Fraction] = {}
    for r in m.records:
        if r.id == y:
            continue  # f^*Y - Y' has no Y' component
        coeff = r.c + s.aux_pullback.coefficient(r.id) - r.rel_canonical - s.zeros.coefficient(r.id)
        if twist:
            coeff += r.b_pullback
        terms[r.id] = coeff
    return restrict_to_yprime(m, QDivisor(terms, XPRIME_NS)).on_yprime


def is_locally_integrable(s: OhsawaSetup) -> IntegrabilityVerdict:
    poles = pole_divisor(s)
    top, witness = max_coefficient(poles)
    if witness is not None and top >= 1:
        return IntegrabilityVerdict(False, poles, witness)
    return IntegrabilityVerdict(True, poles, None)


def theorem_equivalence_check(s: OhsawaSetup) -> bool:
    """Integrability of ``e^{-phi_B} dV[psi]`` against klt of ``(Y^nu, Diff B)``.

    The two sides are computed along separate routes (pole divisor of the
    measure vs. ``Delta_{X'}`` through the adjunction module).  The
    comparison presumes ``D = 0``, ``Z = 0`` and the twist equal to the
    boundary.  For singular ``X`` the result is informational.
    """
    m = s.model
    if s.aux_pullback or s.zeros:
        raise ValueError("the equivalence is stated for D = 0 and Z = 0")
    if s.twist_B is None and not m.boundary.is_zero():
        raise ValueError("twist_B must match the model's boundary")
    integrable = is_locally_integrable(s).integrable
    klt = klt_of_different(m).verdict is Verdict.KLT
    return integrable == klt


def setup_for(m: SncModel) -> OhsawaSetup:
    """The setup pairing ``m`` with ``phi_B`` for its own boundary."""
    return OhsawaSetup(m, twist_B=None if m.boundary.is_zero() else m.boundary)


def smooth_density_exponents(
    local, volume_beta_exponents: Sequence[RationalLike] | None = None
) -> tuple[Fraction, ...]:
    """Exponents of ``|z_k|`` in the density of ``dV[psi]`` on ``{z_n = 0}``.

    For ``psi = log(|z_n|^2 prod |z_k|^{2 a_k})`` and ``dV_X`` vanishing like
    ``prod |z_k|^{beta_k}``, the density is ``prod |z_k|^{beta_k - 2 a_k}``
    with respect to Lebesgue measure on the hyperplane.  ``local`` is a
    :class:`~pairsing.numeric.MonomialWeight` or the bare exponent list.
    """
    a = [as_rational(x) for x in getattr(local, "a", local)]
    beta = [as_rational(x) for x in (volume_beta_exponents or [0] * len(a))]
    if len(beta) != len(a):
        raise ValueError("volume exponents must match the weight's length")
    return tuple(b - 2 * ak for ak, b in zip(a, beta))
