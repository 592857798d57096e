from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transmols.enumeration import all_reduced_squares
from transmols.errors import FixtureMissing, NotLatin, ParseError
from transmols.io import (
    FIXTURES,
    format_square,
    format_squares,
    load_fixture,
    parse_squares,
    read_squares,
    write_squares,
)
from transmols.mols import field_mols, is_latin

SQUARES = [s for n in range(1, 6) for s in all_reduced_squares(n)]


@given(st.lists(st.sampled_from(SQUARES), min_size=1, max_size=4))
def test_format_parse_roundtrip(squares):
    assert parse_squares(format_squares(squares)) == squares


def test_file_roundtrip(tmp_path):
    path = tmp_path / "mols.txt"
    write_squares(path, field_mols(4))
    assert tuple(read_squares(path)) == field_mols(4).squares


def test_format_square():
    assert format_square([[0, 1], [1, 0]]) == "2\n0 1\n1 0\n"


@pytest.mark.parametrize("text, line", [
    ("x\n", 1),
    ("2\n0 1\n", 3),
    ("2\n0 1\n1\n", 3),
    ("2\n0 1\n1 a\n", 3),
    ("2\n0 1\n1 2\n", 3),
    ("0\n", 1),
    ("\n\n", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_squares(text)
    assert info.value.line == line


def test_not_latin_checked_on_request():
    text = "2\n0 1\n0 1\n"
    with pytest.raises(NotLatin):
        parse_squares(text)
    (square,) = parse_squares(text, check=False)
    assert not is_latin(square)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_are_latin(name):
    assert is_latin(load_fixture(name))


def test_fixture_orders():
    assert [load_fixture(name).n for name in FIXTURES] == [6, 9, 10, 10]


def test_missing_fixture():
    with pytest.raises(FixtureMissing):
        load_fixture("nope")
