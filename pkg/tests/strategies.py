"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from pairsing.divisor import QDivisor

NAMES = ["E", "E1", "E2", "B1", "H", "p"]


def _fractions(lo: int, hi: int, max_den: int):
    # Numerator/denominator pairs; much cheaper to draw than st.fractions.
    return st.builds(lambda num, den: Fraction(num, den), st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


rationals = _fractions(-20, 20, 24)
nonneg_rationals = _fractions(0, 3, 12)


def divisors(namespace: str = "X", coeffs=rationals):
    return st.dictionaries(st.sampled_from(NAMES), coeffs, max_size=len(NAMES)).map(
        lambda d: QDivisor(d, namespace)
    )


small_positive = st.builds(lambda num, den: Fraction(num, den), st.integers(1, 24), st.integers(1, 12))


# ---------------------------------------------------------------- random models

from pairsing.resolution import BIG, BoundarySpec, DivisorRecord, Incidence, Kind, SncModel  # noqa: E402

CURVES = ["q1", "q2", "q3"]


@st.composite
def models(draw, max_exceptional: int = 3, max_boundary: int = 2, effective: bool = True):
    """A valid smooth-``X`` model with random exceptional data and boundary."""
    coeff = nonneg_rationals if effective else rationals
    codims = {c: draw(st.sampled_from([1, BIG])) for c in CURVES}
    incidences = st.lists(
        st.builds(lambda c, mu: Incidence(c, mu, codims[c]), st.sampled_from(CURVES), st.integers(1, 3)),
        max_size=2,
        unique_by=lambda i: i.curve,
    )
    comps = {f"B{j}": draw(coeff) for j in range(draw(st.integers(0, max_boundary)))}
    records = [DivisorRecord("Y'", Kind.STRICT_Y, c=1)]
    for name, b in comps.items():
        records.append(DivisorRecord(f"{name}'", Kind.STRICT_B, b_pullback=b, restriction=tuple(draw(incidences)), component=name))
    for i in range(draw(st.integers(0, max_exceptional))):
        mults = [draw(st.integers(0, 2)) for _ in comps]
        b = sum((m * comps[name] for m, name in zip(mults, comps)), Fraction(0))
        records.append(
            DivisorRecord(
                f"E{i}",
                Kind.EXCEPTIONAL,
                c=draw(st.integers(0, 4)),
                b_pullback=b,
                rel_canonical=draw(st.integers(0, 4)),
                restriction=tuple(draw(incidences)),
            )
        )
    return SncModel(BoundarySpec.of(comps), tuple(records))


def enlarge(m: SncModel, bumps: dict[str, Fraction]) -> SncModel:
    """Add ``bumps[B_j] >= 0`` to the boundary.

    Exceptionals already lying over the boundary (``b > 0``) gain the total
    bump; any nonnegative increase is a legitimate effective enlargement
    for the properties tested here."""
    comps = dict(m.boundary.components)
    new_comps = {k: v + bumps.get(k, 0) for k, v in comps.items()}
    records = []
    for r in m.records:
        if r.kind is Kind.STRICT_B:
            r = DivisorRecord(r.id, r.kind, r.c, new_comps[r.component], r.rel_canonical, r.restriction, r.component)
        elif r.kind is Kind.EXCEPTIONAL:
            extra = sum(bumps.values(), Fraction(0)) if r.b_pullback > 0 else Fraction(0)
            r = DivisorRecord(r.id, r.kind, r.c, r.b_pullback + extra, r.rel_canonical, r.restriction)
        records.append(r)
    return SncModel(BoundarySpec.of(new_comps), tuple(records), m.x_smooth)


@st.composite
def enlargements(draw):
    m = draw(models())
    bumps = {name: draw(nonneg_rationals) for name, _ in m.boundary.components}
    return m, enlarge(m, bumps)
