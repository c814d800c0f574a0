import pytest

from conleymorse import fixtures as fx
from conleymorse import io
from conleymorse.exceptions import CycleDetected, NotAPartition, ParseError
from conleymorse.generate import random_case, random_simplicial


def test_poset_roundtrip(strip):
    assert io.parse_poset(io.emit_poset(strip)) == strip


def test_simplicial_roundtrip(strip):
    text = io.emit_simplicial(strip)
    assert text.splitlines() == ["A B C", "B C D", "C D E", "D E F", "E F G"]
    assert io.parse_simplicial(text) == strip


def test_field_roundtrip(field):
    assert io.parse_field(field.space, io.emit_field(field)) == field


@pytest.mark.parametrize("seed", range(30))
def test_random_roundtrips(seed):
    f = random_case(seed)
    sp = io.parse_poset(io.emit_poset(f.space))
    assert sp == f.space
    assert io.parse_field(sp, io.emit_field(f)) == f
    cx = random_simplicial(seed)
    assert io.parse_simplicial(io.emit_simplicial(cx)) == cx


def test_comments_and_blank_lines():
    sp = io.parse_poset("# header\n\ncell a  # bottom\ncell b\ncover a b\n")
    assert sp.leq("a", "b")


@pytest.mark.parametrize(
    "text, line",
    [
        ("cell a\nvertex b\n", 2),
        ("cell a\ncell a\n", 2),
        ("cell a\ncover a\n", 2),
        ("cell a\ncover a z\n", 2),
        ("cell a x\n", 1),
        ("cell a -1\n", 1),
    ],
)
def test_poset_parse_errors_have_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        io.parse_poset(text, "s.poset")
    assert info.value.line == line
    assert str(info.value).startswith(f"s.poset:{line}:")


def test_cycle_is_not_a_parse_error():
    with pytest.raises(CycleDetected):
        io.parse_poset("cell a\ncell b\ncover a b\ncover b a\n")


def test_field_parse_errors(strip):
    with pytest.raises(ParseError) as info:
        io.parse_field(strip, "A AC\nB Q\n")
    assert info.value.line == 2
    with pytest.raises(NotAPartition):
        io.parse_field(strip, "A\n")


def test_cell_list():
    assert io.cell_list("A, AC,C") == ["A", "AC", "C"]
    assert io.cell_list("") == []


def test_data_files_match_fixtures():
    from pathlib import Path

    data = Path(__file__).resolve().parent.parent / "data"
    strip = io.read_space(data / "strip.simplicial", simplicial=True)
    assert strip == fx.strip_space()
    assert io.read_field(strip, data / "strip.mvf") == fx.strip_field()
    eight = io.read_space(data / "eight_point.poset")
    assert io.read_field(eight, data / "eight_point.mvf") == fx.eight_point_field()
    four = io.read_space(data / "four_point.poset")
    assert io.read_field(four, data / "four_point.mvf") == fx.four_point_field()
