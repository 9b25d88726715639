import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairsing.divisor import QDivisor
from pairsing.resolution import (
    BIG,
    BoundarySpec,
    ConeModelParams,
    DivisorRecord,
    Incidence,
    InvalidModel,
    Kind,
    SncModel,
    a_chain_matrix,
    a_surface_model,
    cone_blowup_model,
    dumps_model,
    fermat_model,
    identity_model,
    kollar_example_model,
    loads_model,
    model_from_json,
    node_model,
    parse_family,
    require_valid,
    solve_pullback_coefficients,
    validate,
)


def rules(m, **kw):
    return [v.rule for v in validate(m, **kw)]


def test_identity_model_is_valid():
    assert validate(identity_model()) == []
    assert rules(identity_model(), include_warnings=True) == ["snc-unchecked"]


def test_two_strict_transforms_rejected():
    m = SncModel(BoundarySpec(), (DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("Y2", Kind.STRICT_Y, c=1)))
    assert "duplicate-strict-transform" in rules(m)
    with pytest.raises(InvalidModel):
        require_valid(m)


def test_negative_relative_canonical_rejected_on_smooth_x():
    rec = DivisorRecord("E", Kind.EXCEPTIONAL, c=1, rel_canonical=-1)
    m = SncModel(BoundarySpec(), (DivisorRecord("Y'", Kind.STRICT_Y, c=1), rec))
    assert rules(m) == ["negative-relative-canonical"]
    # On singular X, K_{X'/X} may be negative and fractional.
    m2 = SncModel(BoundarySpec(), (DivisorRecord("Y'", Kind.STRICT_Y, c=1), rec), x_smooth=False)
    assert validate(m2) == []


@pytest.mark.parametrize(
    "records, rule",
    [
        ((DivisorRecord("E", Kind.EXCEPTIONAL, c=1),), "missing-strict-transform"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("Y'", Kind.EXCEPTIONAL, c=1)), "duplicate-id"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=2),), "strict-y-coefficients"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("E", Kind.EXCEPTIONAL, c=-1)), "negative-pullback-y"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("E", Kind.EXCEPTIONAL, rel_canonical=F(1, 2))), "non-integral-relative-canonical"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("H'", Kind.STRICT_B, component="H")), "unknown-boundary-component"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("E", Kind.EXCEPTIONAL, restriction=(Incidence("q", 0),))), "nonpositive-multiplicity"),
        ((DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("E", Kind.EXCEPTIONAL, restriction=(Incidence("q", 1, 3),))), "bad-image-codim"),
        (
            (
                DivisorRecord("Y'", Kind.STRICT_Y, c=1),
                DivisorRecord("E1", Kind.EXCEPTIONAL, restriction=(Incidence("q", 1, 1),)),
                DivisorRecord("E2", Kind.EXCEPTIONAL, restriction=(Incidence("q", 1, BIG),)),
            ),
            "inconsistent-image-codim",
        ),
    ],
)
def test_violations(records, rule):
    assert rule in rules(SncModel(BoundarySpec(), records))


def test_boundary_mismatch():
    b = BoundarySpec.of({"H": F(1, 2)})
    m = SncModel(b, (DivisorRecord("Y'", Kind.STRICT_Y, c=1), DivisorRecord("H'", Kind.STRICT_B, b_pullback=1, component="H")))
    assert rules(m) == ["boundary-coefficient-mismatch"]


class TestSolve:
    def test_one_by_one(self):
        assert solve_pullback_coefficients([[-2]], [1]) == [F(1, 2)]

    def test_a3_chain(self):
        # Hand solution of [[-2,1,0],[1,-2,1],[0,1,-2]] c = -(1,0,0).
        assert solve_pullback_coefficients(a_chain_matrix(3), [1, 0, 0]) == [F(3, 4), F(1, 2), F(1, 4)]
        assert solve_pullback_coefficients(a_chain_matrix(3), [0, 0, 1]) == [F(1, 4), F(1, 2), F(3, 4)]

    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_point_blowup(self, d):
        assert solve_pullback_coefficients([[-1]], [d]) == [F(d)]

    @pytest.mark.parametrize(
        "matrix, err",
        [([[1]], "negative definite"), ([[-2, 1], [0, -2]], "symmetric"), ([[-1, 1], [1, -1]], "singular"), ([[-2, 1]], "square")],
    )
    def test_bad_matrices(self, matrix, err):
        with pytest.raises(ValueError, match=err):
            solve_pullback_coefficients(matrix, [1] * len(matrix))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_effective_strict_transform_gives_positive_solution(self, k, data):
        s = data.draw(st.lists(st.integers(0, 3), min_size=k, max_size=k).filter(any))
        c = solve_pullback_coefficients(a_chain_matrix(k), s)
        assert all(x > 0 for x in c)
        # Residual is exactly zero.
        mat = a_chain_matrix(k)
        assert all(sum(mat[i][j] * c[j] for j in range(k)) == -s[i] for i in range(k))


class TestFamilies:
    def test_cone_three_two(self):
        m = cone_blowup_model(ConeModelParams(3, 2, 1))
        e = m.record("E")
        assert (e.c, e.rel_canonical) == (2, 2)
        assert [i.image_codim for i in e.restriction] == [BIG]

    def test_node(self):
        e = node_model().record("E")
        assert (e.c, e.rel_canonical) == (2, 1)
        assert [(i.curve, i.mult, i.image_codim) for i in e.restriction] == [("p1", 1, 1), ("p2", 1, 1)]

    def test_smooth_point_blowup(self):
        e = cone_blowup_model(ConeModelParams(2, 1)).record("E")
        assert (e.c, e.rel_canonical) == (1, 1)

    def test_a_surface(self):
        assert a_surface_model(1) == identity_model()
        m2 = a_surface_model(2)
        assert [(r.id, r.c, r.rel_canonical) for r in m2.records[1:]] == [("E1", F(1, 2), 0)]
        m4 = a_surface_model(4)
        assert [r.c for r in m4.records[1:]] == [F(3, 4), F(1, 2), F(1, 4)]
        assert not m4.x_smooth

    def test_kollar(self):
        m = kollar_example_model()
        assert validate(m) == []
        assert not m.boundary.is_effective()

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("d", range(1, 10))
    def test_fermat_models_valid(self, n, d):
        assert validate(fermat_model(n, d)) == []

    def test_hyperplane(self):
        m = fermat_model(3, 2, "1/2")
        assert validate(m) == []
        assert m.record("E").b_pullback == F(1, 2)
        assert m.record("H'").restriction[0].image == "H|Y"

    def test_parse_family(self):
        assert parse_family("fermat:3,2") == fermat_model(3, 2)
        assert parse_family("a-surface:4") == a_surface_model(4)
        assert parse_family("node") == node_model()
        assert parse_family("kollar") == kollar_example_model()
        assert parse_family("smooth") == identity_model()
        for bad in ("fermat:3", "bogus", "fermat:x,y", "node:1"):
            with pytest.raises(ValueError):
                parse_family(bad)

    def test_branch_bounds(self):
        with pytest.raises(ValueError):
            cone_blowup_model(ConeModelParams(2, 2, branch_count=3))
        with pytest.raises(ValueError):
            ConeModelParams(1, 2)


FAMILIES = ["fermat:3,2", "fermat:2,5", "node", "a-surface:5", "kollar", "smooth", "cone:4,3,2"]


@pytest.mark.parametrize("spec", FAMILIES)
def test_json_round_trip(spec):
    m = parse_family(spec)
    assert loads_model(dumps_model(m)) == m
    # Coefficients serialize as "num/den" strings.
    doc = json.loads(dumps_model(m))
    assert all("/" in r["c"] for r in doc["records"])


def test_hyperplane_model_round_trip():
    m = node_model("1/2")
    assert loads_model(dumps_model(m)) == m


def test_malformed_documents():
    with pytest.raises(ValueError):
        model_from_json({})
    with pytest.raises(ValueError):
        model_from_json({"records": [{"id": "Y'"}]})
    with pytest.raises(ValueError, match="float"):
        model_from_json({"records": [{"id": "Y'", "kind": "STRICT_Y", "c": 1.0}]})


def test_codim_big_spelling():
    doc = {"records": [{"id": "Y'", "kind": "STRICT_Y", "c": "1"}, {"id": "E", "kind": "EXCEPTIONAL", "restriction": [{"curve": "q", "mult": 1, "image_codim": "big"}]}]}
    m = model_from_json(doc)
    assert m.curve_codims() == {"q": BIG}
    assert m.volume_zero_divisor == QDivisor({}, "X'")
