"""Pure-Python (numpy) implementations of the hot raster kernels.

Used when the compiled extension is unavailable; see kernels.__init__ for
selection.  Semantics are identical to the compiled versions:

- label_ink: 8-connected component labeling; labels are assigned 1..n in
  raster-scan order of each component's first pixel.
- resample_nearest: nearest-neighbor resampling with center-of-pixel mapping
  src = floor((dst + 0.5) * src_len / dst_len).
- zone_means: mean ink per 4x4 cell of a 32x32 glyph, 8x8 grid row-major
  from the top raster row.
- sqdist_matrix: pairwise squared Euclidean distances.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def label_ink(ink: np.ndarray) -> tuple[np.ndarray, int]:
    ink = np.ascontiguousarray(ink, dtype=np.uint8)
    h, w = ink.shape
    labels = np.zeros((h, w), dtype=np.int32)
    count = 0
    offsets = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
    for r0 in range(h):
        row = ink[r0]
        for c0 in range(w):
            if row[c0] and labels[r0, c0] == 0:
                count += 1
                labels[r0, c0] = count
                queue = deque(((r0, c0),))
                while queue:
                    r, c = queue.popleft()
                    for dr, dc in offsets:
                        rr, cc = r + dr, c + dc
                        if 0 <= rr < h and 0 <= cc < w and ink[rr, cc] and labels[rr, cc] == 0:
                            labels[rr, cc] = count
                            queue.append((rr, cc))
    return labels, count


def resample_nearest(mask: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    src_h, src_w = mask.shape
    rows = np.minimum(src_h - 1, ((np.arange(out_h) + 0.5) * src_h / out_h).astype(np.intp))
    cols = np.minimum(src_w - 1, ((np.arange(out_w) + 0.5) * src_w / out_w).astype(np.intp))
    return mask[np.ix_(rows, cols)]


def zone_means(glyph: np.ndarray) -> np.ndarray:
    glyph = np.ascontiguousarray(glyph, dtype=np.uint8)
    if glyph.shape != (32, 32):
        raise ValueError(f"expected a 32x32 glyph, got {glyph.shape}")
    return glyph.reshape(8, 4, 8, 4).astype(np.float64).mean(axis=(1, 3)).ravel()


def sqdist_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    m, k = a.shape[0], b.shape[0]
    out = np.empty((m, k), dtype=np.float64)
    # chunked to bound the broadcast temporary on large pages
    step = max(1, (1 << 22) // max(1, k * a.shape[1]))
    for i in range(0, m, step):
        d = a[i:i + step, None, :] - b[None, :, :]
        out[i:i + step] = np.einsum("ijk,ijk->ij", d, d)
    return out
