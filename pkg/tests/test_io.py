from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from psbck import fixtures, io
from psbck.errors import FormatError

from oracles import pseudo_bck, raw_tables

A4C_TEXT = """\
# commutative example
pbck 4
elements a b c 1
top 1
arrow
1 c 1 1
c 1 1 1
c c 1 1
a b c 1
"""


def test_parse_bck_file_shares_tables():
    A = io.parse_text(A4C_TEXT).algebra()
    assert A.n == 4 and A.labels == ("a", "b", "c", "1") and A.top == 3
    assert A.is_bck


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixture_round_trip(name):
    A = fixtures.load(name)
    prod = fixtures.prod_table(name)
    parsed = io.parse_text(io.dumps(A, prod=prod))
    assert parsed.algebra() == A
    if prod is not None:
        assert np.array_equal(parsed.prod, prod)


@given(raw_tables())
def test_round_trip_raw_tables(A):
    assert io.parse_text(io.dumps(A)).algebra().same_tables(A)


@pytest.mark.parametrize("text,line,col,msg", [
    ("", None, None, "empty file"),
    ("pbk 2\n", 1, 1, "expected header"),
    ("pbck two\n", 1, 6, "not an integer"),
    ("pbck 0\n", 1, 6, "at least 1"),
    ("pbck 2\nelements a\n", 2, 1, "expected 2 element names"),
    ("pbck 2\nelements a a\n", 2, 1, "distinct"),
    ("pbck 2\ntop a\n", 2, 1, "must follow 'elements'"),
    ("pbck 2\nelements a 1\ntop z\n", 3, 5, "unknown element 'z'"),
    ("pbck 2\nelements a 1\ntop 1\narrow\n1 1\n", 4, 1, "needs 2 rows"),
    ("pbck 2\nelements a 1\ntop 1\narrow\n1 1\na\n", 6, 1, "row 2 of 'arrow' has 1 entries"),
    ("pbck 2\nelements a 1\ntop 1\narrow\n1 1\na q\n", 6, 3, "unknown element 'q'"),
    ("pbck 2\nelements a 1\ntop 1\nweird\n", 4, 1, "unexpected token"),
    ("pbck 2\nelements a 1\narrow\n1 1\na 1\n", 5, None, "missing 'top'"),
    ("pbck 2\nelements a 1\ntop 1\n", 3, None, "missing 'arrow'"),
    ("pbck 2\nelements a 1\ntop 1\ntop 1\n", 4, 1, "duplicate section"),
    ("pbck 2\nelements a 1\ntop 1\narrow x\n", 4, 7, "on its own line"),
])
def test_format_errors_carry_position(text, line, col, msg):
    with pytest.raises(FormatError, match=msg) as info:
        io.parse_text(text, "f.pbck")
    assert info.value.line == line
    assert info.value.column == col
    assert str(info.value).startswith("f.pbck:")


def test_unreadable_file(tmp_path):
    with pytest.raises(FormatError, match="cannot read"):
        io.load_algebra(tmp_path / "absent.pbck")


def test_parse_map_both_forms():
    A = fixtures.load("a6")
    row = io.parse_map("0 1 1 1 1 1\n", A)
    arrows = io.parse_map(io.dumps_map(A, row), A)
    assert np.array_equal(row, arrows)
    assert np.array_equal(row, fixtures.a6_map(6))


@pytest.mark.parametrize("text,msg", [
    ("", "empty"),
    ("0 1 1\n", "expected 6"),
    ("0 -> 1\n0 -> 1\n", "duplicate"),
    ("0 -> 1\n", "not total"),
    ("0 => 1\na -> 1\n", "expected 'x -> y'"),
    ("0 -> q\n", "unknown element"),
])
def test_map_errors(text, msg):
    with pytest.raises(FormatError, match=msg):
        io.parse_map(text, fixtures.load("a6"))


def test_parse_measure():
    A = fixtures.load("a2")
    assert io.parse_measure("0 1/2\n1 0\n", A) == {0: Fraction(1, 2), 1: Fraction(0)}
    for text, msg in (("0 0.5\n1 0\n", "exact"), ("0 x\n1 0\n", "p/q"), ("0 1\n", "not total"),
                      ("0 1\n0 1\n", "duplicate"), ("z 1\n", "unknown"), ("0\n", "expected")):
        with pytest.raises(FormatError, match=msg):
            io.parse_measure(text, A)


@given(pseudo_bck())
def test_dump_writes_squiggle_only_when_needed(A):
    text = io.dumps(A)
    assert ("squiggle" in text) == (not A.is_bck)
