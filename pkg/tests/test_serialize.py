import json
from fractions import Fraction as F

import pytest
from hypothesis import given

from circtitch import InputError, delta, root_of_unity
from circtitch.cyclotomic import CycloNumber
from circtitch.serialize import (
    dist_from_json,
    dist_to_json,
    dumps,
    format_angle,
    format_pi,
    load_instance,
    parse_angle,
    parse_cyclo,
)
from conftest import cyclos, distributions


@pytest.mark.parametrize("text, value", [
    ("1/8", F(1, 8)), ("9/8", F(9, 8)), ("-1/16", F(-1, 16)), ("0", F(0)),
    ("1/4 pi", F(1, 8)), ("1 pi", F(1, 2)), ("3/2π", F(3, 4)),
])
def test_parse_angle(text, value):
    assert parse_angle(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1/2/3", ""])
def test_parse_angle_errors(text):
    with pytest.raises(InputError, match="myfield"):
        parse_angle(text, "myfield")


def test_format_angle():
    assert format_angle(F(0)) == "0/1"
    assert format_angle(F(-1, 16)) == "-1/16"
    assert format_pi(F(1, 8)) == "π/4"
    assert format_pi(F(0)) == "0"


@pytest.mark.parametrize("text, value", [
    ("2", CycloNumber(2)),
    ("-1/7", CycloNumber(F(-1, 7))),
    ("i", root_of_unity(1, 4)),
    ("2 - 3*i", 2 - 3 * root_of_unity(1, 4)),
    ("3/2*z(8)^3 - 1/7*z(8) + 2", CycloNumber([2, F(-1, 7), 0, F(3, 2)], 8)),
    ("z(3)^2 + z(3) + 1", CycloNumber(0)),
])
def test_parse_cyclo(text, value):
    assert parse_cyclo(text) == value


@pytest.mark.parametrize("text", ["z(0)", "3*", "z(8)^", "1/0", "q"])
def test_parse_cyclo_errors(text):
    with pytest.raises(InputError, match="coeff"):
        parse_cyclo(text)


@given(cyclos())
def test_cyclo_text_round_trip(z):
    assert parse_cyclo(str(z)) == z


@given(distributions())
def test_distribution_round_trip(f):
    obj = dist_to_json(f)
    assert dist_from_json(json.loads(dumps(obj))) == f
    assert dumps(dist_to_json(dist_from_json(obj))) == dumps(obj)


def test_canonical_form():
    f = delta(F(1, 2), 0, -1) + delta(F(1, 8), 1, root_of_unity(1, 4))
    text = dumps(dist_to_json(f))
    assert text.endswith("}\n")
    obj = json.loads(text)
    assert [t["angle"] for t in obj["terms"]] == ["1/8", "1/2"]
    assert obj["terms"][0]["coeff"] == "z(4)"
    assert obj["field_order"] == 4


def test_order_bound():
    bad = {"terms": [{"angle": "0", "order": 9, "coeff": "1"}]}
    with pytest.raises(InputError, match="order"):
        dist_from_json(bad)


def test_load_instance_diagnostics():
    text = '{"f": {"terms": [\n  {"angle": "1/0", "order": 0, "coeff": "1"}]}}'
    with pytest.raises(InputError) as err:
        load_instance(text, "x.json")
    msg = str(err.value)
    assert "x.json" in msg and "angle" in msg and "line 2" in msg
    with pytest.raises(InputError, match=r"x.json:1:"):
        load_instance('{"f": ', "x.json")


def test_load_instance_bare_distribution():
    inst = load_instance('{"terms": [{"angle": "1/8", "order": 0, "coeff": "1"}]}')
    assert inst == {"f": delta(F(1, 8))}


def test_locations_reduced_mod_one():
    f = dist_from_json({"terms": [{"angle": "9/8", "order": 0, "coeff": "1"},
                                  {"angle": "-1/16", "order": 0, "coeff": "1"}]})
    assert f.support() == [F(1, 8), F(15, 16)]
