"""Glyph normalization and the 66-dimensional shape feature vector.

Layout of a feature vector:
  [0:64]  ink density per zone of an 8x8 grid over the 32x32 normalized
          glyph, row-major from the top raster row, each in [0, 1]
  [64]    aspect term: log10 of width/height clamped to [0.1, 10], in [-1, 1]
  [65]    ink ratio: ink pixels / box area, in [0, 1]

Normalization crops the labeled box, scales the longer side to 32 with
nearest-neighbor sampling (keeping the raster binary), and centers the
shorter side on background padding.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .geometry import Rect, raster_window
from .imageio import PageImage

GLYPH_SIZE = 32
FEATURE_DIM = 66


class EmptyGlyphError(ValueError):
    """Raised when a box contains no ink pixels."""


def scaled_dims(width: int, height: int) -> tuple[int, int]:
    """Target (w, h) with the longer side at 32, aspect preserved, floor(+0.5)."""
    if width >= height:
        return GLYPH_SIZE, max(1, math.floor(GLYPH_SIZE * height / width + 0.5))
    return max(1, math.floor(GLYPH_SIZE * width / height + 0.5)), GLYPH_SIZE


def crop_box(page: PageImage, rect: Rect) -> np.ndarray:
    if rect.left < 0 or rect.bottom < 0 or rect.right > page.width or rect.top > page.height:
        raise ValueError(f"box {rect} outside {page.width}x{page.height} page")
    r0, r1, c0, c1 = raster_window(rect, page.height)
    return page.ink[r0:r1, c0:c1]


def normalize_glyph(page: PageImage, rect: Rect) -> np.ndarray:
    """Crop, scale, and center a glyph into a 32x32 uint8 mask."""
    crop = crop_box(page, rect)
    if not crop.any():
        raise EmptyGlyphError(f"empty glyph in box {rect}")
    sw, sh = scaled_dims(rect.width, rect.height)
    scaled = kernels.resample_nearest(crop.astype(np.uint8), sh, sw)
    out = np.zeros((GLYPH_SIZE, GLYPH_SIZE), dtype=np.uint8)
    row0 = (GLYPH_SIZE - sh) // 2
    col0 = (GLYPH_SIZE - sw) // 2
    out[row0:row0 + sh, col0:col0 + sw] = scaled
    return out


def extract_features(glyph: np.ndarray, original_rect: Rect) -> np.ndarray:
    """66-dim feature vector of a normalized glyph; pure and deterministic."""
    zones = kernels.zone_means(glyph)
    ratio = original_rect.width / original_rect.height
    ratio = min(10.0, max(0.1, ratio))
    aspect = math.log10(ratio)
    sw, sh = scaled_dims(original_rect.width, original_rect.height)
    ink_ratio = float(np.count_nonzero(glyph)) / (sw * sh)
    fv = np.empty(FEATURE_DIM, dtype=np.float64)
    fv[:64] = zones
    fv[64] = aspect
    fv[65] = min(1.0, ink_ratio)
    return fv


def glyph_features(page: PageImage, rect: Rect) -> np.ndarray:
    return extract_features(normalize_glyph(page, rect), rect)


def format_value(v: float) -> str:
    return "%.9g" % v


def write_feature_dump(samples, path: str) -> None:
    """Intermediate training dump: one `label v1 ... v66` line per sample."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for label, fv in samples:
            fh.write(label + " " + " ".join(format_value(v) for v in fv) + "\n")


def read_feature_dump(path: str):
    samples = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) != FEATURE_DIM + 1:
                raise ValueError(f"bad feature line: {line[:40]!r}")
            samples.append((parts[0], np.array([float(p) for p in parts[1:]])))
    return samples
