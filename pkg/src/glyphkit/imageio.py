"""Page image loading and binarization.

Supports the four Netpbm variants P1/P4 (bitmap) and P2/P5 (grayscale,
maxval 255).  Bitmap pixels with value 1 are ink; grayscale pages keep their
gray channel and are binarized by the caller (`binarize_otsu` /
`binarize_fixed`), darker-than-threshold counting as ink.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class PageFormatError(ValueError):
    """Raised for unreadable or malformed image files."""


@dataclass(frozen=True)
class PageImage:
    width: int
    height: int
    ink: np.ndarray                      # bool, shape (height, width), row 0 = top
    source_path: str = ""
    gray: Optional[np.ndarray] = field(default=None, repr=False)  # uint8, same shape

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise PageFormatError(f"bad dimensions {self.width}x{self.height}")
        if self.ink.shape != (self.height, self.width):
            raise PageFormatError("ink mask does not match page dimensions")
        if self.gray is not None and self.gray.shape != (self.height, self.width):
            raise PageFormatError("gray channel does not match page dimensions")

    @property
    def ink_count(self) -> int:
        return int(self.ink.sum())


def page_from_mask(mask: np.ndarray, source_path: str = "") -> PageImage:
    """Wrap a boolean raster (row 0 = top) as a PageImage."""
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    return PageImage(width=w, height=h, ink=mask, source_path=source_path)


def _tokens(data: bytes):
    """Yield whitespace-separated tokens, skipping '#' comments, tracking position."""
    i, n = 0, len(data)
    while i < n:
        c = data[i]
        if c in b"\t\n\r\x0b\x0c ":
            i += 1
        elif c == ord("#"):
            j = data.find(b"\n", i)
            i = n if j < 0 else j + 1
        else:
            j = i
            while j < n and data[j] not in b"\t\n\r\x0b\x0c #":
                j += 1
            yield data[i:j], j
            i = j


def _read_header(data: bytes, want_maxval: bool):
    toks = _tokens(data)
    try:
        magic, pos = next(toks)
        w_tok, pos = next(toks)
        h_tok, pos = next(toks)
        if want_maxval:
            mv_tok, pos = next(toks)
    except StopIteration:
        raise PageFormatError("truncated header")
    try:
        width, height = int(w_tok), int(h_tok)
    except ValueError:
        raise PageFormatError("non-numeric dimensions in header")
    if width <= 0 or height <= 0:
        raise PageFormatError(f"bad dimensions {width}x{height}")
    maxval = None
    if want_maxval:
        try:
            maxval = int(mv_tok)
        except ValueError:
            raise PageFormatError("non-numeric maxval")
        if maxval != 255:
            raise PageFormatError(f"unsupported maxval {maxval} (must be 255)")
    return magic, width, height, maxval, pos


def load_page(path: str) -> PageImage:
    """Load a PBM/PGM file.

    P1/P4 produce a binarized page directly; P2/P5 retain the gray channel
    with an all-background ink mask until the caller binarizes.
    """
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise PageFormatError(f"cannot read {path}: {exc}") from exc
    if len(data) < 2:
        raise PageFormatError(f"{path}: not a Netpbm file")
    magic = data[:2]
    if magic == b"P1":
        _, w, h, _, pos = _read_header(data, want_maxval=False)
        bits = []
        for tok, _ in _tokens(data[pos:]):
            for c in tok:
                if c not in (ord("0"), ord("1")):
                    raise PageFormatError(f"{path}: bad P1 sample {chr(c)!r}")
                bits.append(c)
            if len(bits) >= w * h:
                break
        if len(bits) < w * h:
            raise PageFormatError(f"{path}: P1 raster truncated")
        mask = (np.array(bits[: w * h], dtype=np.uint8) == ord("1")).reshape(h, w)
        return PageImage(w, h, mask, source_path=path)
    if magic == b"P4":
        _, w, h, _, pos = _read_header(data, want_maxval=False)
        # raster starts after the single whitespace byte ending the header
        raster = data[pos + 1:]
        row_bytes = (w + 7) // 8
        if len(raster) < row_bytes * h:
            raise PageFormatError(f"{path}: P4 raster truncated")
        packed = np.frombuffer(raster[: row_bytes * h], dtype=np.uint8)
        rows = np.unpackbits(packed.reshape(h, row_bytes), axis=1)[:, :w]
        return PageImage(w, h, rows.astype(bool), source_path=path)
    if magic in (b"P2", b"P5"):
        _, w, h, _, pos = _read_header(data, want_maxval=True)
        if magic == b"P2":
            vals = []
            for tok, _ in _tokens(data[pos:]):
                try:
                    vals.append(int(tok))
                except ValueError:
                    raise PageFormatError(f"{path}: non-numeric P2 sample")
                if len(vals) == w * h:
                    break
            if len(vals) < w * h:
                raise PageFormatError(f"{path}: P2 raster truncated")
            gray = np.array(vals, dtype=np.int64)
        else:
            raster = data[pos + 1:]
            if len(raster) < w * h:
                raise PageFormatError(f"{path}: P5 raster truncated")
            gray = np.frombuffer(raster[: w * h], dtype=np.uint8).astype(np.int64)
        if gray.min() < 0 or gray.max() > 255:
            raise PageFormatError(f"{path}: sample out of range 0..255")
        gray = gray.astype(np.uint8).reshape(h, w)
        ink = np.zeros((h, w), dtype=bool)
        return PageImage(w, h, ink, source_path=path, gray=gray)
    raise PageFormatError(f"{path}: unsupported magic number {magic!r}")


def binarize_fixed(page: PageImage, threshold: int) -> PageImage:
    """Ink = pixels strictly darker than `threshold` (0..255)."""
    if page.gray is None:
        raise ValueError("page has no gray channel")
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold {threshold} out of range 0..255")
    ink = page.gray < threshold
    return PageImage(page.width, page.height, ink, page.source_path, page.gray)


def otsu_threshold(hist: np.ndarray) -> int:
    """Between-class-variance argmax over a 256-bin histogram, lowest tie wins.

    Candidate t splits pixels into (<= t) and (> t).
    """
    hist = np.asarray(hist, dtype=np.float64)
    total = hist.sum()
    w0 = np.cumsum(hist)                      # weight of the <= t class
    m0 = np.cumsum(hist * np.arange(256))     # unnormalized first moment
    mt = m0[-1]
    w1 = total - w0
    valid = (w0 > 0) & (w1 > 0)
    var = np.zeros(256)
    mu0 = np.divide(m0, w0, out=np.zeros(256), where=valid)
    mu1 = np.divide(mt - m0, w1, out=np.zeros(256), where=valid)
    var[valid] = w0[valid] * w1[valid] * (mu0[valid] - mu1[valid]) ** 2
    return int(np.argmax(var))                # argmax returns the first maximum


def binarize_otsu(page: PageImage) -> tuple[PageImage, int]:
    """Binarize via Otsu's method; returns (page, chosen threshold).

    Pixels <= threshold become ink.  Fails on single-valued images; callers
    wanting a fallback should catch and use binarize_fixed(page, 128).
    """
    if page.gray is None:
        raise ValueError("page has no gray channel")
    hist = np.bincount(page.gray.ravel(), minlength=256)
    if np.count_nonzero(hist) < 2:
        raise ValueError("degenerate histogram: single-valued image")
    t = otsu_threshold(hist)
    return binarize_fixed(page, t + 1), t


def ensure_binarized(page: PageImage) -> PageImage:
    """Binarize grayscale pages (Otsu, fixed-128 fallback); pass bitmaps through."""
    if page.gray is None:
        return page
    try:
        binarized, _ = binarize_otsu(page)
        return binarized
    except ValueError:
        return binarize_fixed(page, 128)


def write_pbm(page_or_mask, path: str) -> None:
    """Serialize an ink mask as binary PBM (P4)."""
    mask = page_or_mask.ink if isinstance(page_or_mask, PageImage) else np.asarray(page_or_mask, dtype=bool)
    h, w = mask.shape
    packed = np.packbits(mask.astype(np.uint8), axis=1)
    with open(path, "wb") as fh:
        fh.write(b"P4\n%d %d\n" % (w, h))
        fh.write(packed.tobytes())


def write_pgm(gray: np.ndarray, path: str) -> None:
    """Serialize a uint8 grayscale raster as binary PGM (P5, maxval 255)."""
    gray = np.asarray(gray, dtype=np.uint8)
    h, w = gray.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(gray.tobytes())
