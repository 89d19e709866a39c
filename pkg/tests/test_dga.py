import json

import pytest

from dihomol.dga import (AlgebraError, AlgebraValidationError, InvolutiveDGA, ParseError,
                         PRESETS, noncommutative_dg_test, noncommutative_test, parse, point,
                         preset, preset_from_token, reduced_basis, serialize, sphere_even,
                         square_zero_dg, to_dict, truncated_poly, validate)
from dihomol.fields import QQ, PrimeField


def failed_axioms(alg):
    return {ax for ax, _ in validate(alg).failures}


@pytest.mark.parametrize("alg", [point(), sphere_even(2), sphere_even(4), truncated_poly(2, 4),
                                 truncated_poly(4, 3, PrimeField(3)), noncommutative_test(),
                                 noncommutative_dg_test(), square_zero_dg()])
def test_presets_validate(alg):
    rep = validate(alg)
    assert rep.ok, rep.render()
    assert rep.render().startswith("all axioms pass")


def test_non_associative_product_is_caught():
    alg = InvolutiveDGA.build(QQ, ["1", "a", "b", "c"], [0, 2, 4, 6], 0,
                              {(1, 1): {2: 1}, (1, 2): {3: 1}})
    assert "associativity" in failed_axioms(alg)
    wit = dict(validate(alg).failures)["associativity"]
    assert "(aa)a" in wit


def test_d_squared_and_leibniz_failures():
    alg = InvolutiveDGA.build(QQ, ["1", "a", "b", "c"], [0, 2, 3, 4], 0, {},
                              {1: {2: 1}, 2: {3: 1}})
    assert "d_squared" in failed_axioms(alg)
    alg = InvolutiveDGA.build(QQ, ["1", "y", "x", "w", "v"], [0, 2, 3, 4, 5], 0,
                              {(1, 1): {3: 1}, (1, 2): {4: 1}, (2, 1): {4: 1}}, {1: {2: 1}})
    assert "leibniz" in failed_axioms(alg)


def test_involution_failures():
    a = noncommutative_test()
    wrong = InvolutiveDGA.build(QQ, a.names, [-d for d in a.degrees], 0,
                                {(2, 1): {3: 1}, (1, 2): {4: 1}})
    assert failed_axioms(wrong) == {"anti_multiplicative"}
    sq = InvolutiveDGA.build(QQ, ["1", "y"], [0, 2], 0, {}, involution={0: {0: 1}, 1: {1: 2}})
    assert "involution_square" in failed_axioms(sq)


def test_degree_axioms():
    alg = InvolutiveDGA.build(QQ, ["1", "z"], [0, -1], 0, {})
    assert "degrees" in failed_axioms(alg)
    alg = InvolutiveDGA.build(QQ, ["1", "a", "b"], [0, 2, 2], 0, {(1, 1): {2: 1}})
    assert "grading" in failed_axioms(alg)
    alg = InvolutiveDGA.build(QQ, ["1", "e"], [0, 1], 0, {})
    assert "simply_connected" in failed_axioms(alg)
    capped = InvolutiveDGA.build(QQ, ["1", "e"], [0, 1], 0, {}, max_bar_length=3)
    assert validate(capped).ok


def test_characteristic_matters():
    # 2 * (ab) = 0 only in characteristic 2, so Leibniz holds over F2 but not Q
    names, degs = ["1", "y", "x", "w", "v"], [0, 2, 3, 4, 5]
    prod = {(1, 1): {3: 1}, (1, 2): {4: 1}, (2, 1): {4: 1}}
    assert not validate(InvolutiveDGA.build(QQ, names, degs, 0, prod, {1: {2: 1}})).ok
    assert validate(InvolutiveDGA.build(PrimeField(2), names, degs, 0, prod, {1: {2: 1}})).ok


@pytest.mark.parametrize("alg", [sphere_even(2), noncommutative_test(), noncommutative_dg_test(),
                                 truncated_poly(2, 3, PrimeField(5))])
def test_round_trip(alg):
    back = parse(serialize(alg))
    assert back == alg
    assert to_dict(back) == to_dict(alg)


def test_parse_errors_carry_locations():
    good = json.loads(serialize(sphere_even(2)))
    cases = []
    doc = dict(good)
    del doc["unit"]
    cases.append((doc, "$"))
    doc = json.loads(serialize(noncommutative_test()))
    doc["product"][0][2][0][0] = "beta"
    cases.append((doc, "$.product[0][2][0][0]"))
    doc = json.loads(json.dumps(good))
    doc["field"] = "F6"
    cases.append((doc, "$.field"))
    doc = json.loads(json.dumps(good))
    doc["generators"][1]["cohomological_degree"] = "2"
    cases.append((doc, "$.generators[1].cohomological_degree"))
    for doc, loc in cases:
        with pytest.raises(ParseError) as exc:
            parse(json.dumps(doc))
        assert exc.value.location == loc
    with pytest.raises(ParseError) as exc:
        parse('{"field": "Q",')
    assert "line 1" in exc.value.location


def test_auto_involution_needs_commutativity():
    doc = json.loads(serialize(noncommutative_test()))
    doc["involution"] = "auto"
    with pytest.raises(ParseError, match="graded-commutative"):
        parse(json.dumps(doc))
    doc = json.loads(serialize(sphere_even(2)))
    doc["involution"] = "auto"
    assert parse(json.dumps(doc)) == sphere_even(2)


def test_parse_rejects_invalid_algebra():
    doc = {"field": "Q", "generators": [{"name": "1", "cohomological_degree": 0},
                                        {"name": "a", "cohomological_degree": 2},
                                        {"name": "b", "cohomological_degree": 3}],
           "unit": "1", "differential": [["a", [["b", 1]]], ["b", [["a", 1]]]]}
    with pytest.raises(AlgebraValidationError):
        parse(json.dumps(doc))


def test_presets_and_tokens():
    assert preset("sphere_even", 4).label == "sphere_even(4)"
    assert preset_from_token("truncpoly-2-4") == truncated_poly(2, 4)
    assert preset_from_token("sphere2", PrimeField(2)).field == PrimeField(2)
    assert set(PRESETS) >= {"point", "sphere_even", "noncommutative_test"}
    with pytest.raises(AlgebraError):
        preset_from_token("torus")
    with pytest.raises(AlgebraError):
        sphere_even(3)


def test_reduced_basis_and_commutativity():
    rb = reduced_basis(noncommutative_test())
    assert rb.names == ("y", "x", "xy", "yx")
    assert not noncommutative_test().is_graded_commutative()
    assert sphere_even(2).is_graded_commutative()
    assert truncated_poly(2, 4).with_field("F3").field == PrimeField(3)
