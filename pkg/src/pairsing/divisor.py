"""Exact formal Q-divisors.

A :class:`QDivisor` is a finite formal sum of named prime divisors with
:class:`fractions.Fraction` coefficients.  Every divisor lives in a
namespace (``"X"``, ``"X'"``, ``"Y'"``, ``"Ynu"``, ...) and arithmetic
between namespaces is refused, so a divisor on the resolution can never be
silently added to one on the normalization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DEFAULT_NAMESPACE = "X"


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are rejected: a coefficient of exactly 1 has to stay exactly 1.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Serialize as ``"num/den"`` (integers too, e.g. ``"2/1"``)."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class PrimeId:
    """A prime divisor, identified by name inside a namespace."""

    name: str
    namespace: str = DEFAULT_NAMESPACE

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("PrimeId name must be non-empty")

    def __str__(self) -> str:
        return self.name


class NamespaceError(ValueError):
    """Raised when divisors from different ambient spaces are combined."""


def _key(name: Union[str, PrimeId], namespace: str) -> str:
    if isinstance(name, PrimeId):
        if name.namespace != namespace:
            raise NamespaceError(
                f"{name.name!r} lives in {name.namespace!r}, not {namespace!r}"
            )
        return name.name
    return name


class QDivisor(Mapping[str, Fraction]):
    """Immutable formal sum ``sum c_i D_i`` with exact coefficients.

    Behaves as a read-only mapping from prime names to coefficients; zero
    coefficients are never stored, and looking up an absent prime via
    :meth:`coefficient` returns 0.
    """

    __slots__ = ("_terms", "_namespace", "_hash")

    def __init__(
        self,
        terms: Union[Mapping[str, RationalLike], Iterable[tuple[str, RationalLike]], None] = None,
        namespace: str = DEFAULT_NAMESPACE,
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[str, Fraction] = {}
        for name, coeff in items:
            key = _key(name, namespace)
            if not key:
                raise ValueError("prime divisor names must be non-empty")
            acc[key] = acc.get(key, Fraction(0)) + as_rational(coeff)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}
        self._namespace = namespace
        self._hash: int | None = None

    @property
    def namespace(self) -> str:
        return self._namespace

    def __getitem__(self, name: str) -> Fraction:
        return self._terms[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, name: Union[str, PrimeId]) -> Fraction:
        return self._terms.get(_key(name, self._namespace), Fraction(0))

    def support(self) -> tuple[PrimeId, ...]:
        return tuple(PrimeId(k, self._namespace) for k in self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self._namespace == other._namespace and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._namespace, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self._terms.items())
        return f"QDivisor({{{body}}}, namespace={self._namespace!r})"

    def _check(self, other: QDivisor) -> None:
        if self._namespace != other._namespace:
            raise NamespaceError(
                f"cannot combine divisors on {self._namespace!r} and {other._namespace!r}"
            )

    def __add__(self, other: QDivisor) -> QDivisor:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other: QDivisor) -> QDivisor:
        if not isinstance(other, QDivisor):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self) -> QDivisor:
        return scale(-1, self)

    def __rmul__(self, c: RationalLike) -> QDivisor:
        return scale(c, self)

    def is_effective(self) -> bool:
        return all(v > 0 for v in self._terms.values())

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._terms.values())

    def restrict_to(self, names: Iterable[str]) -> QDivisor:
        keep = set(names)
        return QDivisor({k: v for k, v in self._terms.items() if k in keep}, self._namespace)

    def without(self, *names: str) -> QDivisor:
        drop = set(names)
        return QDivisor({k: v for k, v in self._terms.items() if k not in drop}, self._namespace)

    def to_json(self) -> dict[str, str]:
        return {k: format_rational(v) for k, v in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str], namespace: str = DEFAULT_NAMESPACE) -> QDivisor:
        return cls({k: as_rational(v) for k, v in data.items()}, namespace)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str, namespace: str = DEFAULT_NAMESPACE) -> QDivisor:
        return cls.from_json(json.loads(text), namespace)


def zero(namespace: str = DEFAULT_NAMESPACE) -> QDivisor:
    return QDivisor({}, namespace)


def add(a: QDivisor, b: QDivisor) -> QDivisor:
    a._check(b)
    terms = dict(a._terms)
    for k, v in b._terms.items():
        terms[k] = terms.get(k, Fraction(0)) + v
    return QDivisor(terms, a.namespace)


def scale(c: RationalLike, a: QDivisor) -> QDivisor:
    c = as_rational(c)
    return QDivisor({k: c * v for k, v in a._terms.items()}, a.namespace)


def floor_divisor(a: QDivisor) -> QDivisor:
    """Round every coefficient down to an integer (``math.floor`` is exact on Fractions)."""
    return QDivisor({k: math.floor(v) for k, v in a._terms.items()}, a.namespace)


def max_coefficient(a: QDivisor) -> tuple[Fraction, PrimeId | None]:
    """Largest coefficient and a prime attaining it, ties broken by name.

    The empty divisor gives ``(0, None)``.
    """
    if not a:
        return Fraction(0), None
    best = max(a.values())
    name = min(k for k, v in a.items() if v == best)
    return best, PrimeId(name, a.namespace)
