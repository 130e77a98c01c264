"""Page decomposition into lines, words, and character candidates.

Pipeline: 8-connected components -> diacritic merging -> greedy line banding
-> gap-threshold word splits.  Everything is deterministic: residual ordering
ties are broken by left edge, then bottom edge.  Touching or cursive writing
produces fewer candidates than true characters on purpose; under-segmentation
is accounted for by the evaluator, never patched here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from statistics import median

import numpy as np

from . import kernels
from .config import SegmentConfig
from .geometry import Rect, horizontal_overlap, vertical_gap
from .imageio import PageImage


@dataclass(frozen=True)
class Component:
    bbox: Rect
    pixel_count: int

    def __post_init__(self):
        if self.pixel_count < 1:
            raise ValueError("component with no pixels")
        if self.pixel_count > self.bbox.area:
            raise ValueError("pixel count exceeds bbox area")


@dataclass(frozen=True)
class Word:
    candidates: tuple[Component, ...]


@dataclass(frozen=True)
class Line:
    words: tuple[Word, ...]


@dataclass(frozen=True)
class SegmentedPage:
    lines: tuple[Line, ...] = field(default_factory=tuple)

    def candidate_count(self) -> int:
        return sum(len(w.candidates) for ln in self.lines for w in ln.words)


def _order_key(c: Component):
    return (c.bbox.left, c.bbox.bottom)


def connected_components(page: PageImage,
                         config: SegmentConfig = SegmentConfig()) -> list[Component]:
    """8-connected ink components, ordered by first pixel in raster-scan order.

    Components smaller than config.min_ink pixels are dropped as noise.
    """
    labels, count = kernels.label_ink(page.ink.astype("uint8"))
    if count == 0:
        return []
    flat = labels.ravel()
    nz = np.nonzero(flat)[0]
    lab = flat[nz]
    rows = nz // page.width
    cols = nz % page.width
    pix = np.bincount(lab, minlength=count + 1)
    r_min = np.full(count + 1, page.height, dtype=np.int64)
    r_max = np.full(count + 1, -1, dtype=np.int64)
    c_min = np.full(count + 1, page.width, dtype=np.int64)
    c_max = np.full(count + 1, -1, dtype=np.int64)
    np.minimum.at(r_min, lab, rows)
    np.maximum.at(r_max, lab, rows)
    np.minimum.at(c_min, lab, cols)
    np.maximum.at(c_max, lab, cols)
    h = page.height
    comps = []
    for i in range(1, count + 1):
        if pix[i] < config.min_ink:
            continue
        rect = Rect(left=int(c_min[i]), bottom=h - 1 - int(r_max[i]),
                    right=int(c_max[i]) + 1, top=h - int(r_min[i]))
        comps.append(Component(bbox=rect, pixel_count=int(pix[i])))
    return comps


def merge_diacritics(comps: list[Component],
                     config: SegmentConfig = SegmentConfig()) -> list[Component]:
    """Merge vertically stacked fragments (dots of 'i'/'j') into one candidate.

    Two components merge when their horizontal overlap is at least
    config.merge_overlap of the narrower one's width AND their vertical gap is
    at most config.merge_gap_factor times the median component height on the
    page.  Merging is transitive; merged boxes are unions; output is ordered
    by left edge (ties by bottom edge).
    """
    n = len(comps)
    if n == 0:
        return []
    med_h = median(c.bbox.height for c in comps)
    max_gap = config.merge_gap_factor * med_h
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            a, b = comps[i].bbox, comps[j].bbox
            overlap = horizontal_overlap(a, b)
            if overlap < config.merge_overlap * min(a.width, b.width):
                continue
            if vertical_gap(a, b) > max_gap:
                continue
            parent[find(i)] = find(j)

    groups: dict[int, list[Component]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(comps[i])
    merged = []
    for members in groups.values():
        bbox = members[0].bbox
        pixels = members[0].pixel_count
        for m in members[1:]:
            bbox = bbox.union(m.bbox)
            pixels += m.pixel_count
        merged.append(Component(bbox=bbox, pixel_count=pixels))
    merged.sort(key=_order_key)
    return merged


def group_lines(candidates: list[Component],
                config: SegmentConfig = SegmentConfig()) -> list[list[Component]]:
    """Greedy banding into text lines, returned top to bottom.

    Candidates are processed by descending top edge; one joins the first line
    whose [min bottom, max top] band, expanded by config.line_band_factor
    times the median candidate height, contains its vertical center.
    """
    if not candidates:
        return []
    med_h = median(c.bbox.height for c in candidates)
    expand = config.line_band_factor * med_h
    ordered = sorted(candidates, key=lambda c: (-c.bbox.top, c.bbox.left, c.bbox.bottom))
    lines: list[dict] = []
    for cand in ordered:
        cy = cand.bbox.center_y
        placed = False
        for ln in lines:
            if ln["bottom"] - expand <= cy <= ln["top"] + expand:
                ln["members"].append(cand)
                ln["bottom"] = min(ln["bottom"], cand.bbox.bottom)
                ln["top"] = max(ln["top"], cand.bbox.top)
                placed = True
                break
        if not placed:
            lines.append({"members": [cand], "bottom": cand.bbox.bottom,
                          "top": cand.bbox.top})
    lines.sort(key=lambda ln: -ln["top"])
    return [sorted(ln["members"], key=_order_key) for ln in lines]


def group_words(line: list[Component],
                config: SegmentConfig = SegmentConfig()) -> list[Word]:
    """Split a left-to-right candidate run into words at large horizontal gaps.

    A boundary goes between adjacent candidates whose gap (right edge to left
    edge, 0 when overlapping) exceeds config.word_gap_factor times the median
    candidate height of the line.
    """
    if not line:
        return []
    med_h = median(c.bbox.height for c in line)
    threshold = config.word_gap_factor * med_h
    words = []
    current = [line[0]]
    for prev, cand in zip(line, line[1:]):
        gap = max(0, cand.bbox.left - prev.bbox.right)
        if gap > threshold:
            words.append(Word(tuple(current)))
            current = []
        current.append(cand)
    words.append(Word(tuple(current)))
    return words


def segment_page(page: PageImage,
                 config: SegmentConfig = SegmentConfig()) -> SegmentedPage:
    """Full segmentation pipeline; every candidate appears in exactly one word."""
    comps = connected_components(page, config)
    candidates = merge_diacritics(comps, config)
    lines = [Line(tuple(group_words(ln, config)))
             for ln in group_lines(candidates, config)]
    return SegmentedPage(tuple(lines))
