import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glyphkit.boxfile import (BoxFile, BoxFileError, GlyphBox, bind_to_page,
                              parse_boxfile, serialize_boxfile)
from glyphkit.imageio import page_from_mask


def test_parse_single_line():
    bf = parse_boxfile("a 12 30 25 52 0\n")
    assert len(bf) == 1
    b = bf.boxes[0]
    assert (b.label, b.left, b.bottom, b.right, b.top, b.page_index) == \
        ("a", 12, 30, 25, 52, 0)


def test_parse_default_page_index():
    bf = parse_boxfile("a 1 2 3 4\n")
    assert bf.boxes[0].page_index == 0


def test_empty_box_reports_line():
    with pytest.raises(BoxFileError, match="empty box at line 1"):
        parse_boxfile("b 5 5 5 9\n")


def test_three_line_round_trip_bytes():
    text = "a 1 2 3 4 0\nb 10 20 30 40 0\nc 5 6 7 8 1\n"
    assert serialize_boxfile(parse_boxfile(text)) == text


def test_serialize_single_box():
    bf = BoxFile((GlyphBox("x", 1, 2, 3, 4, 0),))
    assert serialize_boxfile(bf) == "x 1 2 3 4 0\n"


def test_serialize_empty():
    assert serialize_boxfile(BoxFile()) == ""


def test_all_or_nothing_with_all_diagnostics():
    text = "a 1 2 3 4\nbad line\nc 9 9 9 9\nd 0 0 4 4\nee 0 0 1 1\n"
    with pytest.raises(BoxFileError) as exc_info:
        parse_boxfile(text)
    lines = [ln for ln, _ in exc_info.value.diagnostics]
    assert lines == [2, 3, 5]


@pytest.mark.parametrize("line,msg", [
    ("a 1 2 3\n", "expected 5 or 6 fields"),
    ("a 1 2 3 4 5 6\n", "expected 5 or 6 fields"),
    ("a x 2 3 4\n", "non-integer coordinate"),
    ("a 1 2 3 4 x\n", "non-integer page"),
    ("ab 1 2 3 4\n", "not a single character"),
    ("a 3 2 1 4\n", "empty box"),
    ("a 1 4 3 2\n", "empty box"),
])
def test_malformed_lines(line, msg):
    with pytest.raises(BoxFileError, match=msg):
        parse_boxfile(line)


label_chars = st.characters(min_codepoint=33, max_codepoint=0x2FA0,
                            blacklist_characters=" \t\n\r")


@st.composite
def glyph_boxes(draw):
    left = draw(st.integers(0, 500))
    bottom = draw(st.integers(0, 500))
    return GlyphBox(draw(label_chars), left, bottom,
                    left + draw(st.integers(1, 80)),
                    bottom + draw(st.integers(1, 80)),
                    draw(st.integers(0, 3)))


@settings(max_examples=150, deadline=None)
@given(st.lists(glyph_boxes(), max_size=30))
def test_codec_round_trip_both_directions(boxes):
    bf = BoxFile(tuple(boxes))
    text = serialize_boxfile(bf)
    assert parse_boxfile(text) == bf
    assert serialize_boxfile(parse_boxfile(text)) == text


def _page(w, h):
    return page_from_mask(np.zeros((h, w), dtype=bool))


def test_bind_exact_fit():
    bf = BoxFile((GlyphBox("a", 0, 0, 2, 2),))
    assert bind_to_page(bf, _page(2, 2)) == bf


def test_bind_out_of_bounds_names_line():
    bf = BoxFile((GlyphBox("a", 0, 0, 2, 2), GlyphBox("b", 0, 0, 2, 11)))
    with pytest.raises(BoxFileError, match="line 2"):
        bind_to_page(bf, _page(10, 10))


def test_bind_half_open_top_edge():
    bf = BoxFile((GlyphBox("a", 0, 0, 10, 10),))
    assert bind_to_page(bf, _page(10, 10)) == bf


def test_bind_negative_coordinate_rejected():
    bf = BoxFile((GlyphBox("a", -1, 0, 2, 2),))
    with pytest.raises(BoxFileError, match="line 1"):
        bind_to_page(bf, _page(4, 4))


def test_glyphbox_invariants():
    with pytest.raises(ValueError):
        GlyphBox("ab", 0, 0, 1, 1)
    with pytest.raises(ValueError):
        GlyphBox("a", 1, 0, 1, 1)
    with pytest.raises(ValueError):
        GlyphBox("a", 0, 0, 1, 1, page_index=-1)
