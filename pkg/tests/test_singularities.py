from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from pairsing.divisor import PrimeId, QDivisor
from pairsing.resolution import a_surface_model, fermat_model, kollar_example_model, node_model
from pairsing.singularities import (
    Verdict,
    classify_absolute,
    classify_pair,
    delta_prime,
    discrepancy,
    exceptional_discrepancies,
)

from .strategies import enlargements, models


def X(**terms):
    return QDivisor(terms, "X'")


def test_delta_prime_examples():
    assert delta_prime(fermat_model(3, 2)) == X(**{"Y'": 1})
    assert delta_prime(node_model()) == X(**{"Y'": 1, "E": 1})
    assert delta_prime(kollar_example_model()) == X(**{"Y'": 1, "H1'": 2, "H2'": -2})


def test_discrepancy_examples():
    assert discrepancy(fermat_model(3, 2), "E") == 0
    assert discrepancy(node_model(), "E") == -1
    assert discrepancy(fermat_model(3, 4), PrimeId("E", "X'")) == -2
    with pytest.raises(KeyError):
        discrepancy(node_model(), "nope")


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("d", range(1, 10))
def test_cone_discrepancy_formula(n, d):
    assert exceptional_discrepancies(fermat_model(n, d)) == {"E": n - 1 - d}


def test_classify_examples():
    assert classify_pair(fermat_model(3, 2)).verdict is Verdict.PLT
    node = classify_pair(node_model())
    assert (node.verdict, node.witness.name, node.witness_discrepancy) == (Verdict.LC, "E", -1)
    k = classify_pair(kollar_example_model())
    assert (k.verdict, k.witness.name, k.witness_discrepancy) == (Verdict.NOT_LC, "H1'", -2)


def test_smooth_pair_witness_is_y():
    from pairsing.resolution import identity_model

    pc = classify_pair(identity_model())
    assert pc.verdict is Verdict.PLT
    assert pc.witness == PrimeId("Y'", "X'") and pc.witness_discrepancy == -1


@pytest.mark.parametrize("m", range(1, 8))
def test_du_val_pairs_plt(m):
    # Crepant resolution, Y' has coefficient 1 and nothing else is positive.
    assert classify_pair(a_surface_model(m)).verdict is Verdict.PLT


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("d", range(1, 10))
def test_multiplicity_at_least_n_never_plt(n, d):
    if d >= n:
        assert classify_pair(fermat_model(n, d)).verdict is not Verdict.PLT


def test_classify_absolute():
    ynu = lambda **t: QDivisor(t, "Ynu")  # noqa: E731
    assert classify_absolute(ynu()).verdict is Verdict.KLT
    assert classify_absolute(ynu(p=F(1, 2))).verdict is Verdict.KLT
    assert classify_absolute(ynu(p1=1, p2=1)).verdict is Verdict.LC
    assert classify_absolute(ynu(p=F(3, 2))).verdict is Verdict.NOT_LC


@settings(max_examples=300, deadline=None)
@given(enlargements())
def test_enlarging_boundary_never_improves(pair):
    small, big = pair
    assert classify_pair(big).verdict.rank <= classify_pair(small).verdict.rank


@settings(max_examples=300, deadline=None)
@given(models())
def test_verdict_matches_delta(m):
    delta = delta_prime(m).without("Y'")
    top = max(delta.values(), default=F(0))
    v = classify_pair(m).verdict
    assert v is (Verdict.NOT_LC if top > 1 else Verdict.LC if top == 1 else Verdict.PLT)
