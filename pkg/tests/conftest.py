import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from glyphkit.imageio import PageImage, page_from_mask


def page_from_art(art: str) -> PageImage:
    """Build a page from ascii art: '#' is ink, anything else background."""
    rows = [line for line in art.strip("\n").split("\n")]
    width = max(len(r) for r in rows)
    mask = np.zeros((len(rows), width), dtype=bool)
    for r, line in enumerate(rows):
        for c, ch in enumerate(line):
            mask[r, c] = ch == "#"
    return page_from_mask(mask)


def gray_page(gray: np.ndarray, path: str = "") -> PageImage:
    gray = np.asarray(gray, dtype=np.uint8)
    h, w = gray.shape
    return PageImage(width=w, height=h, ink=np.zeros((h, w), dtype=bool),
                     source_path=path, gray=gray)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))
