import json
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given, strategies as st

from excy import FAMILIES, build
from excy.serialize import approx_text, exact_text, parse, parse_exact, render, schema, to_json, to_text

GOLDEN = Path(__file__).parent / "golden"
CASES = [(f, n) for f in FAMILIES for n in (2, 3, 4)]


@pytest.mark.parametrize("family, n", CASES)
def test_matches_golden_file(family, n):
    expected = (GOLDEN / f"{family}_{n}.json").read_text()
    assert to_json(build(family, n)) == expected


@pytest.mark.parametrize("family, n", CASES)
def test_schema_and_round_trip(family, n):
    record = build(family, n)
    doc = json.loads(to_json(record))
    jsonschema.validate(doc, schema())
    assert parse(doc) == record


def test_schema_rejects_bare_integers():
    doc = render(build("esser-mld", 2))
    doc["degree"] = 22
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, schema())


def test_parse_rejects_other_versions():
    doc = render(build("esser-mld", 2))
    doc["schema_version"] = "9.9"
    with pytest.raises(ValueError):
        parse(doc)


def test_large_integers_survive_round_trip():
    rec = build("esser-mld", 12)
    m = rec.invariants["m"]
    assert m.bit_length() > 5000  # above CPython's default int-to-str limit
    doc = json.loads(to_json(rec))
    assert parse_exact(doc["invariants"]["m"]) == m


@given(st.integers(min_value=-10 ** 60, max_value=10 ** 60),
       st.integers(min_value=1, max_value=10 ** 40))
def test_exact_text_round_trip(a, b):
    x = Fraction(a, b)
    assert Fraction(parse_exact(exact_text(x))) == x


def test_approx_text():
    assert approx_text(Fraction(1, 462)) == "2.2e-3"
    assert approx_text(Fraction(99, 10)) == "9.9e0"
    assert approx_text(Fraction(996, 100)) == "1.0e1"
    assert approx_text(0) == "0"
    assert approx_text(Fraction(1, 2 ** 10000)) == "5.0e-3011"


def test_text_rendering():
    text = to_text(build("esser-mld", 3))
    assert "V_191 ⊂ P(95,61,26,8,1)" in text
    assert "mld" in text and "1/311" in text
    assert "P^2 with coefficients 1/2, 2/3, 6/7, 1" in to_text(build("kollar", 2))
