"""Log resolutions as combinatorial data.

A log resolution ``f: X' -> X`` of ``(X, Y + B)`` is never computed here; it
enters as an :class:`SncModel`, i.e. one :class:`DivisorRecord` per prime
divisor on ``X'`` carrying

* ``c``: the coefficient in ``f^*Y``,
* ``b_pullback``: the coefficient in ``f^*B``,
* ``rel_canonical``: the coefficient in ``K_{X'} - f^*K_X``,
* ``restriction``: how the divisor meets the strict transform ``Y'``.

Built-in constructors cover the standard example families: cones over
smooth hypersurfaces, the ``A_{m-1}`` surface with ``Y = (y = z = 0)``,
and two lines with coefficients 2 and -2 through a point of a smooth
curve.  Anything else can be loaded from JSON.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

from .divisor import QDivisor, RationalLike, as_rational, format_rational

X_NS = "X"
XPRIME_NS = "X'"
YPRIME_NS = "Y'"
YNU_NS = "Ynu"

#: ``image_codim`` value meaning "codimension >= 2 in Y^nu".
BIG = 2


class Kind(str, enum.Enum):
    STRICT_Y = "STRICT_Y"
    STRICT_B = "STRICT_B"
    EXCEPTIONAL = "EXCEPTIONAL"


@dataclass(frozen=True)
class BoundarySpec:
    """``B = sum b_j B_j`` on ``X``; ``Y`` itself has coefficient 1 implicitly."""

    components: tuple[tuple[str, Fraction], ...] = ()
    y_id: str = "Y"

    def __post_init__(self) -> None:
        comps = tuple((str(name), as_rational(b)) for name, b in self.components)
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, components: Mapping[str, RationalLike] | None = None, y_id: str = "Y") -> BoundarySpec:
        return cls(tuple((components or {}).items()), y_id)

    def as_divisor(self) -> QDivisor:
        return QDivisor(dict(self.components), X_NS)

    def coefficient(self, name: str) -> Fraction:
        return dict(self.components).get(name, Fraction(0))

    def is_effective(self) -> bool:
        return all(b >= 0 for _, b in self.components)

    def is_zero(self) -> bool:
        return all(b == 0 for _, b in self.components)


@dataclass(frozen=True)
class Incidence:
    """One prime divisor of ``Y'`` cut out by a record.

    ``image`` is the name of its image on ``Y^nu``; it only matters when
    ``image_codim == 1`` and defaults to the curve's own name.
    """

    curve: str
    mult: int
    image_codim: int = 1
    image: str | None = None

    @property
    def image_name(self) -> str:
        return self.image if self.image is not None else self.curve


@dataclass(frozen=True)
class DivisorRecord:
    id: str
    kind: Kind
    c: Fraction = Fraction(0)
    b_pullback: Fraction = Fraction(0)
    rel_canonical: Fraction = Fraction(0)
    restriction: tuple[Incidence, ...] = ()
    component: str | None = None  # the B_j this record is the strict transform of

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("c", "b_pullback", "rel_canonical"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        object.__setattr__(self, "restriction", tuple(self.restriction))


@dataclass(frozen=True)
class SncModel:
    boundary: BoundarySpec
    records: tuple[DivisorRecord, ...]
    x_smooth: bool = True
    volume_zero_divisor: QDivisor = field(default_factory=lambda: QDivisor({}, XPRIME_NS))

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))

    def record(self, rid: str) -> DivisorRecord:
        for r in self.records:
            if r.id == rid:
                return r
        raise KeyError(f"no divisor {rid!r} in model")

    @property
    def strict_y(self) -> DivisorRecord:
        ys = [r for r in self.records if r.kind is Kind.STRICT_Y]
        if len(ys) != 1:
            raise InvalidModel([Violation("*", "missing-strict-transform" if not ys else "duplicate-strict-transform")])
        return ys[0]

    def ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.records)

    def curve_codims(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.records:
            for inc in r.restriction:
                out.setdefault(inc.curve, inc.image_codim)
        return out

    def curve_images(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for r in self.records:
            for inc in r.restriction:
                out.setdefault(inc.curve, inc.image_name)
        return out


@dataclass(frozen=True)
class Violation:
    record: str
    rule: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.rule} ({self.record})"


class InvalidModel(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def validate(m: SncModel, *, include_warnings: bool = False) -> list[Violation]:
    """Check the model's invariants; an empty list means the model is usable.

    Violations are returned, not raised.  With ``include_warnings`` the
    list also carries the ``snc-unchecked`` warning: whether
    ``(Delta_{X'} - Y')|_{Y'}`` really is snc cannot be decided from
    coefficients alone and is trusted to the caller.
    """
    out: list[Violation] = []
    ys = [r for r in m.records if r.kind is Kind.STRICT_Y]
    if not ys:
        out.append(Violation("*", "missing-strict-transform"))
    for extra in ys[1:]:
        out.append(Violation(extra.id, "duplicate-strict-transform"))

    seen: set[str] = set()
    for r in m.records:
        if r.id in seen:
            out.append(Violation(r.id, "duplicate-id"))
        seen.add(r.id)

    bcomp = dict(m.boundary.components)
    if m.boundary.y_id in bcomp:
        out.append(Violation(m.boundary.y_id, "y-in-boundary"))
    if len(bcomp) != len(m.boundary.components):
        out.append(Violation("*", "duplicate-boundary-component"))

    codims: dict[str, int] = {}
    images: dict[str, str] = {}
    for r in m.records:
        if r.c < 0:
            out.append(Violation(r.id, "negative-pullback-y"))
        if m.x_smooth:
            if r.rel_canonical < 0:
                out.append(Violation(r.id, "negative-relative-canonical"))
            if r.rel_canonical.denominator != 1:
                out.append(Violation(r.id, "non-integral-relative-canonical"))
            if r.kind is not Kind.EXCEPTIONAL and r.rel_canonical != 0:
                out.append(Violation(r.id, "strict-transform-relative-canonical"))
        if r.kind is Kind.STRICT_Y:
            if r.c != 1 or r.b_pullback != 0:
                out.append(Violation(r.id, "strict-y-coefficients"))
            if r.restriction:
                out.append(Violation(r.id, "self-restriction"))
        elif r.kind is Kind.STRICT_B:
            if r.component not in bcomp:
                out.append(Violation(r.id, "unknown-boundary-component"))
            elif r.b_pullback != bcomp[r.component]:
                out.append(Violation(r.id, "boundary-coefficient-mismatch"))
            if r.c != 0:
                out.append(Violation(r.id, "boundary-contains-y"))
        for inc in r.restriction:
            if inc.mult < 1:
                out.append(Violation(r.id, "nonpositive-multiplicity"))
            if inc.image_codim not in (1, BIG):
                out.append(Violation(r.id, "bad-image-codim"))
            if codims.setdefault(inc.curve, inc.image_codim) != inc.image_codim:
                out.append(Violation(r.id, "inconsistent-image-codim"))
            if images.setdefault(inc.curve, inc.image_name) != inc.image_name:
                out.append(Violation(r.id, "inconsistent-image"))

    if m.volume_zero_divisor.namespace != XPRIME_NS:
        out.append(Violation("*", "volume-zeros-namespace"))
    else:
        for name in m.volume_zero_divisor:
            if name not in seen:
                out.append(Violation(name, "volume-zeros-unknown-divisor"))
        if not m.volume_zero_divisor.is_effective():
            out.append(Violation("*", "volume-zeros-not-effective"))

    if include_warnings:
        out.append(Violation("*", "snc-unchecked", "warning"))
    return out


def require_valid(m: SncModel) -> None:
    errors = [v for v in validate(m) if v.severity == "error"]
    if errors:
        raise InvalidModel(errors)


# ---------------------------------------------------------------- linear solve


def _leading_minors(mat: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    n = len(mat)
    return [_det([row[:k] for row in mat[:k]]) for k in range(1, n + 1)]


def _det(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(row) for row in mat]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def solve_pullback_coefficients(
    intersection_matrix: Sequence[Sequence[int]], strict_dot_E: Sequence[int]
) -> list[Fraction]:
    """Solve ``M c = -s`` over Q for the exceptional coefficients of ``f^*Y``.

    ``M`` is the intersection matrix of the exceptional curves and ``s_i``
    the intersection number of the strict transform with ``E_i``.  ``M``
    must be negative definite, checked exactly by the sign pattern of its
    leading principal minors (``(-1)^k det M_k > 0``).
    """
    mat = [[Fraction(x) for x in row] for row in intersection_matrix]
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("intersection matrix must be square")
    if len(strict_dot_E) != n:
        raise ValueError("strict_dot_E length does not match the matrix")
    if any(mat[i][j] != mat[j][i] for i in range(n) for j in range(n)):
        raise ValueError("intersection matrix must be symmetric")
    for k, minor in enumerate(_leading_minors(mat), start=1):
        if minor == 0:
            raise ValueError("intersection matrix is singular")
        if (minor > 0) != (k % 2 == 0):
            raise ValueError("intersection matrix is not negative definite")

    # Gauss-Jordan on the augmented system; pivots are nonzero by definiteness.
    aug = [row[:] + [-Fraction(s)] for row, s in zip(mat, strict_dot_E)]
    for col in range(n):
        piv = aug[col][col]
        aug[col] = [x / piv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


# ---------------------------------------------------------------- families


def identity_model(boundary: BoundarySpec | None = None, y_meets: Iterable[str] = ()) -> SncModel:
    """Smooth ``Y`` in smooth ``X``: ``f`` is the identity.

    Each boundary component becomes a strict record; those listed in
    ``y_meets`` cut ``Y`` transversally in a divisor named ``"<B>|Y"``.
    """
    boundary = boundary or BoundarySpec()
    meets = set(y_meets)
    records = [DivisorRecord("Y'", Kind.STRICT_Y, c=1)]
    for name, b in boundary.components:
        inc = (Incidence(f"{name}|Y", 1, 1),) if name in meets else ()
        records.append(DivisorRecord(f"{name}'", Kind.STRICT_B, b_pullback=b, restriction=inc, component=name))
    return SncModel(boundary, tuple(records), x_smooth=True)


@dataclass(frozen=True)
class ConeModelParams:
    n: int
    d: int
    branch_count: int | None = None
    hyperplane: Fraction | None = None  # coefficient of a general hyperplane through 0 in B

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("cone model needs n >= 2")
        if self.d < 1:
            raise ValueError("cone model needs d >= 1")
        if self.branch_count is not None and self.branch_count < 1:
            raise ValueError("branch_count must be positive")
        if self.hyperplane is not None:
            object.__setattr__(self, "hyperplane", as_rational(self.hyperplane))


def cone_blowup_model(p: ConeModelParams) -> SncModel:
    """Blow-up of the origin for a hypersurface of multiplicity ``d`` in ``C^n``
    whose projectivized tangent cone is smooth (e.g. ``z_1^d + ... + z_n^d``).

    One exceptional ``E`` with ``c = d`` and ``K_{X'/X} = (n-1)E``.  For
    ``n = 2`` the cone is ``d`` lines and ``E`` meets ``Y'`` in points over
    the branches, which are divisors on the curve ``Y^nu``; for ``n >= 3``
    ``E`` meets ``Y'`` along the tangent cone, which maps to the point.
    """
    n, d = p.n, p.d
    if n == 2:
        bc = p.branch_count if p.branch_count is not None else d
        if bc > d:
            raise ValueError("a multiplicity-d plane curve has at most d branches")
        mults = [d // bc + (1 if i < d % bc else 0) for i in range(bc)]
        e_inc = tuple(Incidence(f"p{i + 1}", mu, 1) for i, mu in enumerate(mults))
    else:
        bc = p.branch_count if p.branch_count is not None else 1
        names = ["E|Y'"] if bc == 1 else [f"E|Y'_{i + 1}" for i in range(bc)]
        e_inc = tuple(Incidence(c, 1, BIG) for c in names)

    h = p.hyperplane
    comps: dict[str, Fraction] = {}
    records = [DivisorRecord("Y'", Kind.STRICT_Y, c=1)]
    records.append(
        DivisorRecord("E", Kind.EXCEPTIONAL, c=d, b_pullback=h or 0, rel_canonical=n - 1, restriction=e_inc)
    )
    if h is not None:
        comps["H"] = h
        # A general hyperplane through 0 misses the points of E|Y' when n = 2;
        # for n >= 3 it cuts Y' in a divisor mapping onto the divisor H|Y.
        h_inc = () if n == 2 else (Incidence("H'|Y'", 1, 1, image="H|Y"),)
        records.append(DivisorRecord("H'", Kind.STRICT_B, b_pullback=h, restriction=h_inc, component="H"))
    return SncModel(BoundarySpec.of(comps), tuple(records), x_smooth=True)


def fermat_model(n: int, d: int, hyperplane: RationalLike | None = None) -> SncModel:
    return cone_blowup_model(ConeModelParams(n, d, hyperplane=None if hyperplane is None else as_rational(hyperplane)))


def node_model(hyperplane: RationalLike | None = None) -> SncModel:
    """``y^2 = x^2(x+1)``: one blow-up, two branches through the origin."""
    return cone_blowup_model(
        ConeModelParams(2, 2, branch_count=2, hyperplane=None if hyperplane is None else as_rational(hyperplane))
    )


def a_chain_matrix(length: int) -> list[list[int]]:
    """Intersection matrix of a chain of ``length`` (-2)-curves."""
    return [[-2 if i == j else (1 if abs(i - j) == 1 else 0) for j in range(length)] for i in range(length)]


def a_surface_model(m: int) -> SncModel:
    """Minimal resolution of ``xy = z^m`` with ``Y = (y = z = 0)``.

    The exceptional locus is a chain ``E_1, ..., E_{m-1}`` of (-2)-curves,
    crepant, with ``Y'`` meeting ``E_1`` transversally at one point ``p``.
    """
    if m < 1:
        raise ValueError("a_surface_model needs m >= 1")
    if m == 1:
        return identity_model()
    k = m - 1
    strict = [1] + [0] * (k - 1)
    coeffs = solve_pullback_coefficients(a_chain_matrix(k), strict)
    records = [DivisorRecord("Y'", Kind.STRICT_Y, c=1)]
    for i, c in enumerate(coeffs, start=1):
        inc = (Incidence("p", 1, 1),) if strict[i - 1] else ()
        records.append(DivisorRecord(f"E{i}", Kind.EXCEPTIONAL, c=c, rel_canonical=0, restriction=inc))
    return SncModel(BoundarySpec(), tuple(records), x_smooth=False)


def kollar_example_model() -> SncModel:
    """``X = C^2``, ``Y = (x = 0)``, ``B = 2(x - y = 0) - 2(x + y = 0)``.

    One blow-up of the origin separates everything.  ``f^*B`` has
    coefficient ``2 - 2 = 0`` on ``E``; neither strict line meets ``Y'``.
    """
    boundary = BoundarySpec.of({"H1": 2, "H2": -2})
    records = (
        DivisorRecord("Y'", Kind.STRICT_Y, c=1),
        DivisorRecord("E", Kind.EXCEPTIONAL, c=1, b_pullback=0, rel_canonical=1, restriction=(Incidence("q", 1, 1),)),
        DivisorRecord("H1'", Kind.STRICT_B, b_pullback=2, component="H1"),
        DivisorRecord("H2'", Kind.STRICT_B, b_pullback=-2, component="H2"),
    )
    return SncModel(boundary, records, x_smooth=True)


def parse_family(spec: str) -> SncModel:
    """Build a model from a shorthand: ``fermat:n,d``, ``cone:n,d[,branches]``,
    ``node``, ``a-surface:m``, ``kollar``, ``smooth``."""
    name, _, args = spec.strip().partition(":")
    name = name.lower()
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"bad family arguments in {spec!r}") from None
    if name == "fermat" and len(nums) == 2:
        return fermat_model(*nums)
    if name == "cone" and len(nums) in (2, 3):
        return cone_blowup_model(ConeModelParams(*nums))
    if name == "node" and not nums:
        return node_model()
    if name == "a-surface" and len(nums) == 1:
        return a_surface_model(nums[0])
    if name == "kollar" and not nums:
        return kollar_example_model()
    if name == "smooth" and not nums:
        return identity_model()
    raise ValueError(f"unrecognized family {spec!r}")


# ---------------------------------------------------------------- JSON


def model_to_json(m: SncModel) -> dict[str, Any]:
    def rec(r: DivisorRecord) -> dict[str, Any]:
        out: dict[str, Any] = {
            "id": r.id,
            "kind": r.kind.value,
            "c": format_rational(r.c),
            "b_pullback": format_rational(r.b_pullback),
            "rel_canonical": format_rational(r.rel_canonical),
            "restriction": [
                {"curve": i.curve, "mult": i.mult, "image_codim": i.image_codim}
                | ({"image": i.image} if i.image is not None else {})
                for i in r.restriction
            ],
        }
        if r.component is not None:
            out["component"] = r.component
        return out

    return {
        "boundary": {
            "y": m.boundary.y_id,
            "components": {name: format_rational(b) for name, b in m.boundary.components},
        },
        "records": [rec(r) for r in m.records],
        "x_smooth": m.x_smooth,
        "volume_zeros": m.volume_zero_divisor.to_json(),
    }


def _codim(value: Union[int, str]) -> int:
    if isinstance(value, str):
        if value.lower() in ("big", ">=2"):
            return BIG
        value = int(value)
    return BIG if value >= 2 else int(value)


def model_from_json(data: Mapping[str, Any]) -> SncModel:
    """Parse the JSON document schema; raises ``ValueError`` on malformed input."""
    try:
        b = data.get("boundary", {}) or {}
        boundary = BoundarySpec(
            tuple((k, as_rational(v)) for k, v in (b.get("components") or {}).items()),
            b.get("y", "Y"),
        )
        records = []
        for r in data["records"]:
            records.append(
                DivisorRecord(
                    id=r["id"],
                    kind=Kind(r["kind"]),
                    c=as_rational(r.get("c", 0)),
                    b_pullback=as_rational(r.get("b_pullback", 0)),
                    rel_canonical=as_rational(r.get("rel_canonical", 0)),
                    restriction=tuple(
                        Incidence(i["curve"], int(i["mult"]), _codim(i.get("image_codim", 1)), i.get("image"))
                        for i in r.get("restriction", [])
                    ),
                    component=r.get("component"),
                )
            )
        return SncModel(
            boundary,
            tuple(records),
            bool(data.get("x_smooth", True)),
            QDivisor.from_json(data.get("volume_zeros") or {}, XPRIME_NS),
        )
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed model document: {exc!r}") from exc


def dumps_model(m: SncModel) -> str:
    return json.dumps(model_to_json(m), indent=2)


def loads_model(text: str) -> SncModel:
    return model_from_json(json.loads(text))


def load_model(path: Union[str, Path]) -> SncModel:
    return loads_model(Path(path).read_text())
