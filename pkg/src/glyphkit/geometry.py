"""Axis-aligned boxes in page coordinates.

Boxes use a bottom-left origin and are half-open on the high edges: a box
covers x in [left, right) and y in [bottom, top).  The page raster itself is
stored top-left row-major; conversion happens in `raster_window`.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Rect:
    left: int
    bottom: int
    right: int
    top: int

    def __post_init__(self):
        if self.left >= self.right or self.bottom >= self.top:
            raise ValueError(f"empty box {self!r}")

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.top - self.bottom

    @property
    def area(self) -> int:
        return self.width * self.height

    @property
    def center_y(self) -> float:
        return (self.bottom + self.top) / 2.0

    def union(self, other: "Rect") -> "Rect":
        return Rect(min(self.left, other.left), min(self.bottom, other.bottom),
                    max(self.right, other.right), max(self.top, other.top))


def intersection_area(a: Rect, b: Rect) -> int:
    w = min(a.right, b.right) - max(a.left, b.left)
    h = min(a.top, b.top) - max(a.bottom, b.bottom)
    if w <= 0 or h <= 0:
        return 0
    return w * h


def iou(a: Rect, b: Rect) -> float:
    inter = intersection_area(a, b)
    if inter == 0:
        return 0.0
    return inter / float(a.area + b.area - inter)


def coverage(inner: Rect, outer: Rect) -> float:
    """Fraction of `inner`'s area covered by `outer`."""
    return intersection_area(inner, outer) / float(inner.area)


def horizontal_overlap(a: Rect, b: Rect) -> int:
    return min(a.right, b.right) - max(a.left, b.left)


def vertical_gap(a: Rect, b: Rect) -> int:
    """Vertical distance between two boxes; 0 when their y-ranges overlap."""
    return max(0, max(a.bottom, b.bottom) - min(a.top, b.top))


def raster_window(rect: Rect, page_height: int) -> tuple[int, int, int, int]:
    """Map a bottom-left-origin box to raster slices (row0, row1, col0, col1).

    The raster is top-left row-major, so y = 0 is row page_height - 1.
    Returned ranges are half-open and suitable for numpy slicing.
    """
    return page_height - rect.top, page_height - rect.bottom, rect.left, rect.right
