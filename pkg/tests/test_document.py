from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import full_catalog, gl11_named
from splitsuper import (
    AlgebraDocument,
    InputError,
    ReportDocument,
    SubalgebraDocument,
    catalog_parabolic,
    format_rational,
    gl,
    parse_algebra,
    parse_rational,
    parse_report,
    parse_subalgebra,
    print_algebra,
    print_report,
    print_subalgebra,
)


def test_rational_strings():
    assert parse_rational("3") == 3
    assert parse_rational("-7/4") == F(-7, 4)
    assert format_rational(F(6, -4)) == "-3/2"
    for bad in ("0.5", "1/0", "1e3", "", 2):
        with pytest.raises(InputError):
            parse_rational(bad)


@settings(max_examples=100)
@given(st.fractions())
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("alg", full_catalog(), ids=lambda a: a.name)
def test_algebra_document_round_trip(alg):
    doc = AlgebraDocument.from_algebra(alg)
    again = parse_algebra(print_algebra(doc))
    assert again == doc
    assert again.build().same_as(alg)


def test_subalgebra_document_round_trip():
    g = gl(2, 2)
    h = catalog_parabolic(g, 1, 1)
    doc = SubalgebraDocument.from_embedding(h)
    again = parse_subalgebra(print_subalgebra(doc))
    assert again == doc
    assert [dict(v) for v in again.build(g).vectors] == [dict(v) for v in h.vectors]


def test_report_round_trip():
    rep = ReportDocument("ranks", {"algebra": "x"}, {"ranks": [1, 2, 1]}, {"assume_connected": True}, "0.1.0")
    assert parse_report(print_report(rep)) == rep


def test_unknown_label_in_bracket():
    doc = AlgebraDocument.from_algebra(gl11_named())
    doc.brackets.append((("a", "z"), [("a", "1")]))
    with pytest.raises(InputError, match="unknown basis label"):
        doc.build()


def test_duplicate_bracket():
    doc = AlgebraDocument.from_algebra(gl11_named())
    doc.brackets.append(doc.brackets[0])
    with pytest.raises(InputError):
        doc.build()


def test_malformed_json():
    with pytest.raises(InputError):
        parse_algebra("{not json")
    with pytest.raises(InputError):
        parse_algebra('{"basis": 3}')
