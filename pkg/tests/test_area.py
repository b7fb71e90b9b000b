import json

import pytest

from kgroups.presentations import (Evaluation, NullExpression, Presentation,
                                   area_search, dehn_function,
                                   is_null_homotopic, parse_presentation,
                                   verify_null_expression)
from kgroups.words import parse_word, to_text


@pytest.fixture
def zz():
    """< x, y | [x,y] >, with the abelianization as equality oracle."""
    return Presentation(("x", "y"), ("[x,y]",), Evaluation([(1, 0), (0, 1)]))


def test_presentation_parsing_and_validation(zz):
    P = parse_presentation("< x, y | [x,y] >")
    assert P.to_text() == "< x, y | x y x^-1 y^-1 >"
    with pytest.raises(ValueError):
        Presentation(("x", "y"), ("1",))  # empty relator
    with pytest.raises(ValueError):
        # relator fails the oracle
        Presentation(("x", "y"), ("x y",), Evaluation([(1, 0), (0, 1)]))


def test_null_homotopy_oracle(zz):
    assert is_null_homotopic(zz, zz.word("[x^3, y]"))
    assert not is_null_homotopic(zz, zz.word("x y"))


def test_null_expression_verification(zz):
    w = zz.word("[x,y]")
    good = NullExpression([(zz.group.identity, 0, 1)])
    assert verify_null_expression(zz, w, good)
    bad = NullExpression([(zz.word("x"), 0, 1)])
    assert not verify_null_expression(zz, w, bad)


def test_null_expression_json_round_trip(zz):
    expr = NullExpression([(zz.word("x y"), 0, -1), (zz.group.identity, 0, 1)])
    data = json.loads(json.dumps(expr.to_json()))
    back = NullExpression.from_json(zz, data)
    assert [(to_text(c), r, s) for c, r, s in back.items] == \
        [(to_text(c), r, s) for c, r, s in expr.items]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 9)])
def test_commutator_power_areas(zz, n, expected):
    w = zz.word(f"[x^{n}, y^{n}]")
    res = area_search(zz, w)
    assert res.status == "exact"
    assert res.area == expected
    assert verify_null_expression(zz, w, res.witness)
    # the greedy probe matches the cocycle bound, so no search ran
    assert res.unconditional


def test_area_of_conjugated_relator(zz):
    w = zz.word("y^2 [x,y] y^-2")
    res = area_search(zz, w)
    assert res.status == "exact" and res.area == 1
    assert verify_null_expression(zz, w, res.witness)


def test_area_search_rejects_non_null_words(zz):
    with pytest.raises(ValueError):
        area_search(zz, zz.word("x"))


def test_obstruction_precheck_without_oracle():
    P = parse_presentation("< x, y | [x,y] >")  # no evaluation attached
    res = area_search(P, P.word("x y"))
    assert res.status == "exhausted"
    assert res.regime_empty  # conserved sums prove impossibility
    assert res.nodes == 0


def test_stop_at_bound_certificate(zz):
    w = zz.word("[x^2, y^2]")
    res = area_search(zz, w, heuristic=False, stop_at_bound=3)
    assert res.status == "exhausted"
    assert not res.regime_empty
    assert res.lower_bound >= 3
    assert res.stop_reason == "reached requested bound"


def test_plain_search_agrees_with_heuristic_on_small_words(zz):
    for text in ("[x,y]", "y [x,y] y^-1", "[x,y]^2", "[x,y^2]"):
        w = zz.word(text)
        plain = area_search(zz, w, heuristic=False)
        fancy = area_search(zz, w)
        assert plain.status == fancy.status == "exact"
        assert plain.area == fancy.area


def test_torus_relator_of_higher_genus():
    # a length-8 relator with no evaluation oracle: the surface relation
    P = parse_presentation("< a, b, c, d | [a,b] [c,d] >")
    w = P.word("[a,b] [c,d]")
    res = area_search(P, w)
    assert res.status == "exact" and res.area == 1
    conj = P.word("c")
    w2 = P.word("c [a,b] [c,d] c^-1")
    res2 = area_search(P, w2)
    assert res2.status == "exact" and res2.area == 1
    assert verify_null_expression(P, w2, res2.witness)
    assert to_text(res2.witness.items[0][0]) == to_text(conj)


def test_dehn_function_small_values(zz):
    res3 = dehn_function(zz, 3)
    assert res3.exact and res3.value == 0
    res4 = dehn_function(zz, 4)
    assert res4.exact and res4.value == 1
    assert to_text(res4.witness) == "x y x^-1 y^-1"
    res6 = dehn_function(zz, 6)
    assert res6.exact and res6.value == 2
    assert res6.classes_searched >= res4.classes_searched


def test_dehn_function_parallel_matches_serial(zz):
    serial = dehn_function(zz, 5, jobs=1)
    parallel = dehn_function(zz, 5, jobs=2)
    assert (serial.n, serial.value, serial.exact) == \
        (parallel.n, parallel.value, parallel.exact)


def test_dehn_needs_oracle():
    with pytest.raises(ValueError):
        dehn_function(parse_presentation("< x, y | [x,y] >"), 3)


def test_area_result_json_is_deterministic(zz):
    w = zz.word("[x^2, y^2]")
    a = json.dumps(area_search(zz, w).to_json(), sort_keys=True)
    b = json.dumps(area_search(zz, w).to_json(), sort_keys=True)
    assert a == b
