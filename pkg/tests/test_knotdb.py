"""Knot-table loading, polynomial parsing and identification."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tunnelcensus.diagram import montesinos_pd
from tunnelcensus.errors import PolynomialSyntaxError, TableError
from tunnelcensus.invariants import (
    LaurentPolynomial,
    determinant,
    jones,
    mirror_canonical,
)
from tunnelcensus.knotdb import (
    identify,
    load_knot_table,
    parse_jones_string,
)
from tunnelcensus.montesinos import (
    canonicalize,
    parse_code,
    structural_flags,
)

from conftest import build_table_csv


def _invariants(code):
    pd = montesinos_pd(code)
    return determinant(pd), str(mirror_canonical(jones(pd)))


def _write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


HEADER = ("name,crossing_number,alternating,bridge_index,determinant,"
          "jones_polynomial,montesinos_notation\n")


# --- polynomial parser -----------------------------------------------------

def test_parse_examples():
    assert parse_jones_string("1") == LaurentPolynomial({0: 1})
    assert parse_jones_string("-t^(-4)+ t^(-3)+ t^(-1)") == LaurentPolynomial(
        {-4: -1, -3: 1, -1: 1})
    assert parse_jones_string("t^-2-t^-1+1-t+t^2") == LaurentPolynomial(
        {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert parse_jones_string("2*t^3 - 4") == LaurentPolynomial({3: 2, 0: -4})
    assert parse_jones_string("3t") == LaurentPolynomial({1: 3})
    # unicode minus is accepted
    assert parse_jones_string("−t") == LaurentPolynomial({1: -1})


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("t^", 2),
    ("++1", 1),
    ("t t", 2),
    ("3*", 2),
    ("t^()", 3),
    ("t^(4", 4),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_jones_string(text)
    assert exc.value.offset == offset


@given(st.dictionaries(st.integers(-9, 9), st.integers(-99, 99), max_size=6))
def test_parser_round_trips_formatter(coeffs):
    poly = LaurentPolynomial(coeffs)
    assert parse_jones_string(str(poly)) == poly


# --- loading ---------------------------------------------------------------

def test_load_minimal_table(tmp_path):
    det, jones_text = _invariants(parse_code("M(0; 1/2, 1/3, 2/5)"))
    rows = [{"name": "testknot-a", "crossing_number": 11, "alternating": "Y",
             "bridge_index": 3, "determinant": det,
             "jones_polynomial": jones_text,
             "montesinos_notation": "M(0; 1/2, 1/3, 2/5)"}]
    table = load_knot_table(_write(tmp_path, build_table_csv(rows)))
    assert len(table.records) == 1
    rec = table.by_name["testknot-a"]
    assert rec.bridge_index == 3 and rec.alternating
    assert rec.determinant == det
    # incomplete census is a warning, not an error
    assert any("census incomplete" in w for w in table.warnings)
    assert len(table.checksum) == 64


def test_load_missing_column(tmp_path):
    path = _write(tmp_path, "name,crossing_number\nfoo,11\n")
    with pytest.raises(TableError, match="missing column"):
        load_knot_table(path)


def test_load_empty_file(tmp_path):
    with pytest.raises(TableError, match="missing column"):
        load_knot_table(_write(tmp_path, ""))


def test_load_duplicate_name(tmp_path):
    body = HEADER + "k1,11,Y,2,3,t,\nk1,11,Y,2,3,t,\n"
    with pytest.raises(TableError, match="row 3.*duplicate"):
        load_knot_table(_write(tmp_path, body))


def test_load_bad_polynomial(tmp_path):
    body = HEADER + "k1,11,Y,2,3,t^^2,\n"
    with pytest.raises(TableError, match="row 2.*Jones"):
        load_knot_table(_write(tmp_path, body))


def test_load_bad_fields(tmp_path):
    with pytest.raises(TableError, match="alternating"):
        load_knot_table(_write(tmp_path, HEADER + "k1,11,maybe,2,3,t,\n"))
    with pytest.raises(TableError, match="bridge"):
        load_knot_table(_write(tmp_path, HEADER + "k1,11,Y,x,3,t,\n"))
    with pytest.raises(TableError, match="determinant"):
        load_knot_table(_write(tmp_path, HEADER + "k1,11,Y,2,-3,t,\n"))


def test_load_flags_inconsistencies(tmp_path):
    # |Jones(-1)| = 1 for "t", but the determinant column says 3
    body = HEADER + "k1,11,Y,2,3,t,\nk2,9,Y,2,3,-t-t^2-t^3,\nk3,12,Y,9,3,-t-t^2-t^3,\n"
    table = load_knot_table(_write(tmp_path, body))
    assert any("k1" in w and "determinant" in w for w in table.warnings)
    assert any("k2" in w and "outside the census range" in w
               for w in table.warnings)
    assert any("k3" in w and "bridge index" in w for w in table.warnings)
    assert not table.census_complete


def test_load_column_overrides(tmp_path):
    body = ("knot,cr,alt,br,det,vpoly\n"
            "k1,11,Y,2,3,-t-t^2-t^3\n")
    table = load_knot_table(
        _write(tmp_path, body),
        columns={"name": "knot", "crossing_number": "cr",
                 "alternating": "alt", "bridge_index": "br",
                 "determinant": "det", "jones": "vpoly"})
    assert table.by_name["k1"].montesinos_notation is None


# --- identification --------------------------------------------------------

def test_identify_unique_and_none(tmp_path):
    code = canonicalize(parse_code("M(0; 1/2, 1/3, 2/5)"))
    det, jones_text = _invariants(code)
    rows = [{"name": "testknot-a", "crossing_number": 10, "alternating": "Y",
             "bridge_index": 3, "determinant": det,
             "jones_polynomial": jones_text, "montesinos_notation": ""}]
    table = load_knot_table(_write(tmp_path, build_table_csv(rows)))
    info = structural_flags(code, diagram_crossings=10)
    match = identify(info, table)
    assert match.is_unique and match.name == "testknot-a"
    assert not match.reduced_crossing

    other = structural_flags(canonicalize(parse_code("M(0; 1/2, 1/3, 1/3)")),
                             diagram_crossings=8)
    missing = identify(other, table)
    assert missing.is_none
    with pytest.raises(ValueError):
        missing.name


def test_identify_reduced_crossing_flag(tmp_path):
    # this code's 9-crossing diagram reduces to 8 crossings
    code = canonicalize(parse_code("M(-1; 1/2, 1/3, 1/3)"))
    det, jones_text = _invariants(code)
    rows = [{"name": "testknot-b", "crossing_number": 8, "alternating": "N",
             "bridge_index": 3, "determinant": det,
             "jones_polynomial": jones_text, "montesinos_notation": ""}]
    table = load_knot_table(_write(tmp_path, build_table_csv(rows)))
    info = structural_flags(code, diagram_crossings=9)
    match = identify(info, table)
    assert match.is_unique and match.reduced_crossing


def test_identify_notation_tie_break(tmp_path):
    # mutant pair: same tangle multiset, different adjacency
    code_a = canonicalize(parse_code("M(0; 1/2, 1/3, 1/3, 2/3)"))
    code_b = canonicalize(parse_code("M(0; 1/2, 1/3, 2/3, 1/3)"))
    assert code_a != code_b
    det, jones_text = _invariants(code_a)
    rows = [
        {"name": "mutant-a", "crossing_number": 11, "alternating": "Y",
         "bridge_index": 4, "determinant": det,
         "jones_polynomial": jones_text,
         "montesinos_notation": "M(0; 1/2, 1/3, 1/3, 2/3)"},
        {"name": "mutant-b", "crossing_number": 11, "alternating": "Y",
         "bridge_index": 4, "determinant": det,
         "jones_polynomial": jones_text,
         "montesinos_notation": "M(0; 1/2, 1/3, 2/3, 1/3)"},
    ]
    table = load_knot_table(_write(tmp_path, build_table_csv(rows)))
    info = structural_flags(code_a, diagram_crossings=11)
    match = identify(info, table)
    assert match.is_unique and match.name == "mutant-a"


def test_identify_ambiguous_without_notation(tmp_path):
    code_a = canonicalize(parse_code("M(0; 1/2, 1/3, 1/3, 2/3)"))
    det, jones_text = _invariants(code_a)
    rows = [
        {"name": "mutant-a", "crossing_number": 11, "alternating": "Y",
         "bridge_index": 4, "determinant": det,
         "jones_polynomial": jones_text, "montesinos_notation": ""},
        {"name": "mutant-b", "crossing_number": 11, "alternating": "Y",
         "bridge_index": 4, "determinant": det,
         "jones_polynomial": jones_text, "montesinos_notation": ""},
    ]
    table = load_knot_table(_write(tmp_path, build_table_csv(rows)))
    info = structural_flags(code_a, diagram_crossings=11)
    match = identify(info, table)
    assert match.is_ambiguous
    assert match.names == ("mutant-a", "mutant-b")
