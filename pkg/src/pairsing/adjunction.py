"""Restriction to ``Y'``, the different on ``Y^nu`` and inversion of adjunction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .divisor import QDivisor, add
from .resolution import XPRIME_NS, YNU_NS, YPRIME_NS, SncModel, require_valid
from .singularities import PairClass, Verdict, classify_absolute, classify_pair, delta_prime


@dataclass(frozen=True)
class RestrictedDivisor:
    on_yprime: QDivisor
    provenance: Mapping[str, tuple[str, ...]]


def restrict_to_yprime(m: SncModel, d: QDivisor) -> RestrictedDivisor:
    """Restrict a divisor on ``X'`` (not containing ``Y'``) to ``Y'``.

    The coefficient of a curve ``g`` is ``sum_r d_r * mult(g in r|Y')``.
    """
    if d.namespace != XPRIME_NS:
        raise ValueError(f"expected a divisor on X', got namespace {d.namespace!r}")
    y = m.strict_y.id
    if d.coefficient(y) != 0:
        raise ValueError("cannot restrict a divisor containing Y' to Y'")
    known = set(m.ids())
    unknown = [k for k in d if k not in known]
    if unknown:
        raise KeyError(f"divisors not in the model: {unknown}")

    terms: dict[str, Fraction] = {}
    prov: dict[str, list[str]] = {}
    for r in m.records:
        coeff = d.coefficient(r.id)
        for inc in r.restriction:
            prov.setdefault(inc.curve, []).append(r.id)
            if coeff:
                terms[inc.curve] = terms.get(inc.curve, Fraction(0)) + coeff * inc.mult
    return RestrictedDivisor(QDivisor(terms, YPRIME_NS), {k: tuple(v) for k, v in sorted(prov.items())})


def pushforward_to_ynu(m: SncModel, r: RestrictedDivisor) -> QDivisor:
    """Divisorial pushforward along ``Y' -> Y^nu``: keep curves whose image
    is still a divisor, drop the ones contracted to codimension >= 2."""
    codims = m.curve_codims()
    images = m.curve_images()
    terms: dict[str, Fraction] = {}
    for curve, coeff in r.on_yprime.items():
        if codims.get(curve, 1) == 1:
            img = images.get(curve, curve)
            terms[img] = terms.get(img, Fraction(0)) + coeff
    return QDivisor(terms, YNU_NS)


def gamma(m: SncModel) -> RestrictedDivisor:
    """``(Delta_{X'} - Y')|_{Y'}``."""
    delta = delta_prime(m)
    return restrict_to_yprime(m, delta.without(m.strict_y.id))


def different(m: SncModel) -> QDivisor:
    """``Diff(B)`` on ``Y^nu`` as the pushforward of ``(Delta_{X'} - Y')|_{Y'}``."""
    return pushforward_to_ynu(m, gamma(m))


def _pullback_of_b(m: SncModel) -> QDivisor:
    return QDivisor({r.id: r.b_pullback for r in m.records}, XPRIME_NS)


def different_zero(m: SncModel) -> QDivisor:
    """``Diff(0)``, from the same resolution with the boundary dropped."""
    require_valid(m)
    y = m.strict_y.id
    d0 = QDivisor({r.id: r.c - r.rel_canonical for r in m.records if r.id != y}, XPRIME_NS)
    return pushforward_to_ynu(m, restrict_to_yprime(m, d0))


def diff_decomposition_check(m: SncModel) -> bool:
    """``Diff(B) == Diff(0) + B|_{Y^nu}``, exactly."""
    b_part = pushforward_to_ynu(m, restrict_to_yprime(m, _pullback_of_b(m)))
    return different(m) == add(different_zero(m), b_part)


def klt_of_different(m: SncModel) -> PairClass:
    """klt of ``(Y^nu, Diff B)``, decided upstairs on ``(Y', Gamma)``.

    The pushed-forward different forgets curves contracted to points, and
    those still carry discrepancies over ``Y^nu``; the upstairs divisor
    does not lose them.
    """
    return classify_absolute(gamma(m).on_yprime)


def klt_of_different_downstairs(m: SncModel) -> PairClass:
    """Verdict from ``Diff(B)`` alone.  Agrees with :func:`klt_of_different`
    only when every dropped curve has coefficient < 1."""
    return classify_absolute(different(m))


@dataclass(frozen=True)
class InversionReport:
    klt_of_different: PairClass
    plt_near_y: PairClass
    consistent: bool
    applicable: bool

    def to_json(self) -> dict:
        return {
            "klt_of_different": self.klt_of_different.to_json(),
            "plt_near_y": self.plt_near_y.to_json(),
            "consistent": self.consistent,
            "applicable": self.applicable,
        }


def inversion_check(m: SncModel) -> InversionReport:
    """Compare klt of ``(Y^nu, Diff B)`` with plt of ``(X, Y + B)`` near ``Y``.

    Only meaningful for effective ``B``; otherwise ``applicable`` is False
    and a mismatch is reported rather than raised.
    """
    klt = klt_of_different(m)
    plt = classify_pair(m)
    consistent = (klt.verdict is Verdict.KLT) == (plt.verdict is Verdict.PLT)
    return InversionReport(klt, plt, consistent, m.boundary.is_effective())

__all__ = [
    "RestrictedDivisor",
    "restrict_to_yprime",
    "pushforward_to_ynu",
    "gamma",
    "different",
    "different_zero",
    "diff_decomposition_check",
    "klt_of_different",
    "klt_of_different_downstairs",
    "InversionReport",
    "inversion_check",
]
