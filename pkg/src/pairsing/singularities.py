"""Discrepancies and klt / plt / lc verdicts read off a log resolution."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .divisor import PrimeId, QDivisor, max_coefficient
from .resolution import XPRIME_NS, Kind, SncModel, require_valid


class Verdict(str, enum.Enum):
    KLT = "KLT"
    PLT = "PLT"
    LC = "LC"
    NOT_LC = "NOT_LC"

    @property
    def rank(self) -> int:
        """Order NOT_LC < LC < PLT/KLT; larger is milder."""
        return {"NOT_LC": 0, "LC": 1, "PLT": 2, "KLT": 2}[self.value]


@dataclass(frozen=True)
class PairClass:
    verdict: Verdict
    witness: PrimeId | None = None
    witness_discrepancy: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.name,
            "witness_discrepancy": None if self.witness_discrepancy is None else str(self.witness_discrepancy),
        }


def delta_prime(m: SncModel) -> QDivisor:
    """``Delta_{X'}`` with ``K_{X'} + Delta_{X'} = f^*(K_X + Y + B)``.

    Coefficient of each record is ``c + b - k`` where ``k`` is its
    coefficient in ``K_{X'/X}``; ``Y'`` gets exactly 1.
    """
    require_valid(m)
    return QDivisor({r.id: r.c + r.b_pullback - r.rel_canonical for r in m.records}, XPRIME_NS)


def discrepancy(m: SncModel, e: Union[str, PrimeId]) -> Fraction:
    name = e.name if isinstance(e, PrimeId) else e
    if name not in m.ids():
        raise KeyError(f"unknown divisor {name!r}")
    return -delta_prime(m).coefficient(name)


def classify_pair(m: SncModel) -> PairClass:
    """Classify ``(X, Y + B)`` near ``Y``.

    ``Y'`` always has coefficient 1, so KLT is impossible; the verdict is
    PLT when every other coefficient is < 1, LC when the maximum is exactly
    1 and NOT_LC when some coefficient exceeds 1.  The witness is the
    worst divisor other than ``Y'`` (or ``Y'`` itself if there is none).
    """
    delta = delta_prime(m)
    y = m.strict_y.id
    top, witness = max_coefficient(delta.without(y))
    if witness is None:
        return PairClass(Verdict.PLT, PrimeId(y, XPRIME_NS), Fraction(-1))
    if top > 1:
        verdict = Verdict.NOT_LC
    elif top == 1:
        verdict = Verdict.LC
    else:
        verdict = Verdict.PLT
    return PairClass(verdict, witness, -top)


def classify_absolute(d: QDivisor) -> PairClass:
    """klt test for an snc boundary on a smooth space."""
    top, witness = max_coefficient(d)
    if witness is None:
        return PairClass(Verdict.KLT)
    if top > 1:
        verdict = Verdict.NOT_LC
    elif top == 1:
        verdict = Verdict.LC
    else:
        verdict = Verdict.KLT
    return PairClass(verdict, witness, -top)


def exceptional_discrepancies(m: SncModel) -> dict[str, Fraction]:
    delta = delta_prime(m)
    return {r.id: -delta.coefficient(r.id) for r in m.records if r.kind is Kind.EXCEPTIONAL}
