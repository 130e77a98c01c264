import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glyphkit.imageio import (PageFormatError, binarize_fixed, binarize_otsu,
                              ensure_binarized, load_page, otsu_threshold,
                              page_from_mask, write_pbm, write_pgm)
from glyphkit.synthfont import render_template

from conftest import gray_page
from oracles import otsu_brute_force


def test_p1_decode(tmp_path):
    p = tmp_path / "t.pbm"
    p.write_bytes(b"P1\n2 2\n1 0\n0 1\n")
    page = load_page(str(p))
    assert page.width == 2 and page.height == 2
    assert page.ink[0, 0] and page.ink[1, 1]
    assert not page.ink[0, 1] and not page.ink[1, 0]


def test_p2_uniform_white_has_no_foreground(tmp_path):
    p = tmp_path / "t.pgm"
    p.write_bytes(b"P2\n3 2\n255\n255 255 255 255 255 255\n")
    page = load_page(str(p))
    assert page.gray is not None
    with pytest.raises(ValueError, match="degenerate"):
        binarize_otsu(page)
    assert ensure_binarized(page).ink_count == 0


def test_p5_rendered_letter_matches_reference_decoder(tmp_path):
    mask = render_template("a").astype(bool)
    gray = np.where(mask, 30, 220).astype(np.uint8)
    gray[0, 0] = 200  # a little texture so the histogram is not two-valued
    path = tmp_path / "a.pgm"
    write_pgm(gray, str(path))

    # independent scalar decoder
    data = path.read_bytes()
    assert data[:2] == b"P5"
    rest = data[2:].split(b"\n", 3)
    w, h = map(int, rest[1].split())
    assert int(rest[2]) == 255
    ref_gray = [[rest[3][r * w + c] for c in range(w)] for r in range(h)]
    ref_t = otsu_brute_force([sum(row.count(v) for row in ref_gray) for v in range(256)])
    ref_ink = sum(1 for row in ref_gray for v in row if v <= ref_t)

    page = load_page(str(path))
    binarized, t = binarize_otsu(page)
    assert t == ref_t
    assert binarized.ink_count == ref_ink


def test_binarize_fixed_definition():
    page = gray_page(np.array([[0, 128, 255]], dtype=np.uint8))
    out = binarize_fixed(page, 128)
    assert out.ink.tolist() == [[True, False, False]]
    assert binarize_fixed(page, 0).ink_count == 0
    with pytest.raises(ValueError):
        binarize_fixed(page, 256)
    with pytest.raises(ValueError):
        binarize_fixed(page_from_mask(np.zeros((1, 1), bool)), 100)


def test_otsu_two_value_image():
    gray = np.array([[0] * 10 + [255] * 10], dtype=np.uint8)
    page = gray_page(gray)
    binarized, t = binarize_otsu(page)
    assert 0 <= t < 255
    assert binarized.ink.tolist() == [[True] * 10 + [False] * 10]


def test_otsu_single_value_error():
    with pytest.raises(ValueError, match="degenerate histogram"):
        binarize_otsu(gray_page(np.full((4, 4), 7, dtype=np.uint8)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=1000), min_size=256, max_size=256))
def test_otsu_matches_brute_force(hist):
    if sum(1 for v in hist if v > 0) < 2:
        hist[0] += 1
        hist[255] += 1
    assert otsu_threshold(np.array(hist)) == otsu_brute_force(hist)


@settings(max_examples=40, deadline=None)
@given(w=st.integers(min_value=1, max_value=64), h=st.integers(min_value=1, max_value=64),
       seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_pbm_round_trip(w, h, seed):
    import tempfile
    rng = np.random.Generator(np.random.PCG64(seed))
    mask = rng.random((h, w)) < 0.4
    with tempfile.TemporaryDirectory() as td:
        path = td + "/m.pbm"
        write_pbm(mask, path)
        page = load_page(path)
    assert (page.ink == mask).all()


def test_binarize_fixed_monotone(rng):
    gray = rng.integers(0, 256, size=(16, 16)).astype(np.uint8)
    page = gray_page(gray)
    prev = binarize_fixed(page, 0).ink
    for t in range(1, 256, 7):
        cur = binarize_fixed(page, t).ink
        assert (prev <= cur).all()
        prev = cur


@pytest.mark.parametrize("content,match", [
    (b"P9\n2 2\n0 0 0 0\n", "unsupported magic"),
    (b"P1\n0 2\n\n", "bad dimensions"),
    (b"P1\n2\n", "truncated header"),
    (b"P2\n2 2\n64\n0 0 0 0", "maxval"),
    (b"P1\n2 2\n1 0 1\n", "truncated"),
    (b"P5\n4 4\n255\nxx", "truncated"),
])
def test_malformed_files(tmp_path, content, match):
    p = tmp_path / "bad.pbm"
    p.write_bytes(content)
    with pytest.raises(PageFormatError, match=match):
        load_page(str(p))


def test_unreadable_file():
    with pytest.raises(PageFormatError, match="cannot read"):
        load_page("/nonexistent/nope.pbm")


def test_p4_padding_and_comments(tmp_path):
    p = tmp_path / "t.pbm"
    p.write_bytes(b"P1\n# comment line\n3 2 # trailing\n1 1 1\n0 0 1\n")
    page = load_page(str(p))
    assert page.ink.tolist() == [[True, True, True], [False, False, True]]
