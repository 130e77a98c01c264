"""Procedural lowercase test font.

Each letter is a set of stroke primitives (lines, circles, arcs) in a unit
box with y growing downward; rasterization samples the strokes densely and
stamps a small disk at each point, giving 2-3 px thick pen-like strokes.
Used to synthesize handwriting-shaped corpora for tests and demos; 'i' and
'j' carry detached dots on purpose to exercise diacritic merging.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

SCALE = 13          # unit-box scale in pixels
PEN = 1             # stamp radius; strokes come out 2-3 px wide


def _line(x0, y0, x1, y1):
    return ("line", x0, y0, x1, y1)


def _circle(cx, cy, r):
    return ("arc", cx, cy, r, 0.0, 360.0)


def _arc(cx, cy, r, a0, a1):
    return ("arc", cx, cy, r, a0, a1)


def _dot(cx, cy):
    return ("dot", cx, cy)


STROKES: dict[str, tuple] = {
    "a": (_circle(0.38, 0.68, 0.27), _line(0.67, 0.40, 0.67, 1.0)),
    "b": (_line(0.16, 0.0, 0.16, 1.0), _circle(0.46, 0.70, 0.27)),
    "c": (_arc(0.48, 0.68, 0.28, 35.0, 325.0),),
    "d": (_line(0.76, 0.0, 0.76, 1.0), _circle(0.46, 0.70, 0.27)),
    "e": (_circle(0.46, 0.68, 0.28), _line(0.20, 0.68, 0.72, 0.68)),
    "f": (_line(0.42, 0.16, 0.42, 1.0), _arc(0.60, 0.16, 0.18, 180.0, 270.0),
          _line(0.18, 0.45, 0.68, 0.45)),
    "g": (_circle(0.44, 0.62, 0.25), _line(0.70, 0.38, 0.70, 1.22),
          _arc(0.44, 1.2, 0.26, 20.0, 150.0)),
    "h": (_line(0.16, 0.0, 0.16, 1.0), _arc(0.46, 0.70, 0.29, 180.0, 360.0),
          _line(0.75, 0.70, 0.75, 1.0)),
    "i": (_line(0.5, 0.38, 0.5, 1.0), _dot(0.5, 0.10)),
    "j": (_line(0.56, 0.38, 0.56, 1.22), _arc(0.36, 1.2, 0.2, 20.0, 120.0),
          _dot(0.56, 0.10)),
    "k": (_line(0.18, 0.0, 0.18, 1.0), _line(0.18, 0.64, 0.72, 0.36),
          _line(0.36, 0.55, 0.74, 1.0)),
    "l": (_line(0.5, 0.0, 0.5, 1.0),),
    "m": (_line(0.10, 0.40, 0.10, 1.0), _arc(0.28, 0.62, 0.18, 180.0, 360.0),
          _line(0.46, 0.62, 0.46, 1.0), _arc(0.64, 0.62, 0.18, 180.0, 360.0),
          _line(0.82, 0.62, 0.82, 1.0)),
    "n": (_line(0.18, 0.40, 0.18, 1.0), _arc(0.46, 0.68, 0.28, 180.0, 360.0),
          _line(0.74, 0.68, 0.74, 1.0)),
    "o": (_circle(0.47, 0.68, 0.28),),
    "p": (_line(0.17, 0.40, 0.17, 1.38), _circle(0.47, 0.66, 0.26)),
    "q": (_circle(0.43, 0.66, 0.26), _line(0.70, 0.40, 0.70, 1.38)),
    "r": (_line(0.22, 0.40, 0.22, 1.0), _arc(0.50, 0.70, 0.28, 190.0, 320.0)),
    "s": (_arc(0.46, 0.54, 0.17, 55.0, 275.0), _arc(0.46, 0.86, 0.17, 235.0, 450.0)),
    "t": (_line(0.44, 0.10, 0.44, 0.86), _arc(0.60, 0.84, 0.16, 90.0, 180.0),
          _line(0.20, 0.40, 0.72, 0.40)),
    "u": (_line(0.18, 0.40, 0.18, 0.76), _arc(0.46, 0.74, 0.28, 0.0, 180.0),
          _line(0.74, 0.40, 0.74, 1.0)),
    "v": (_line(0.16, 0.40, 0.46, 1.0), _line(0.46, 1.0, 0.76, 0.40)),
    "w": (_line(0.08, 0.40, 0.27, 1.0), _line(0.27, 1.0, 0.45, 0.56),
          _line(0.45, 0.56, 0.63, 1.0), _line(0.63, 1.0, 0.82, 0.40)),
    "x": (_line(0.16, 0.40, 0.76, 1.0), _line(0.76, 0.40, 0.16, 1.0)),
    "y": (_line(0.18, 0.40, 0.47, 1.0), _line(0.76, 0.40, 0.30, 1.38)),
    "z": (_line(0.18, 0.40, 0.74, 0.40), _line(0.74, 0.40, 0.18, 1.0),
          _line(0.18, 1.0, 0.74, 1.0)),
}

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _stamp(canvas: np.ndarray, x: float, y: float, radius: int) -> None:
    h, w = canvas.shape
    cx, cy = int(round(x)), int(round(y))
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            if dx * dx + dy * dy <= radius * radius + 0.01:
                yy, xx = cy + dy, cx + dx
                if 0 <= yy < h and 0 <= xx < w:
                    canvas[yy, xx] = 1


@lru_cache(maxsize=None)
def render_template(letter: str) -> np.ndarray:
    """Tight-cropped uint8 mask for one letter of the test font."""
    if letter not in STROKES:
        raise KeyError(f"no template for {letter!r}")
    h = int(math.ceil(1.45 * SCALE)) + 2 * PEN + 2
    w = SCALE + 2 * PEN + 2
    canvas = np.zeros((h, w), dtype=np.uint8)
    for stroke in STROKES[letter]:
        kind = stroke[0]
        if kind == "line":
            _, x0, y0, x1, y1 = stroke
            length = math.hypot(x1 - x0, y1 - y0) * SCALE
            steps = max(2, int(length * 2))
            for i in range(steps + 1):
                t = i / steps
                _stamp(canvas, PEN + 1 + (x0 + t * (x1 - x0)) * SCALE,
                       PEN + 1 + (y0 + t * (y1 - y0)) * SCALE, PEN)
        elif kind == "arc":
            _, cx, cy, r, a0, a1 = stroke
            sweep = math.radians(a1 - a0)
            steps = max(4, int(abs(sweep) * r * SCALE * 2))
            for i in range(steps + 1):
                a = math.radians(a0) + sweep * i / steps
                _stamp(canvas, PEN + 1 + (cx + r * math.cos(a)) * SCALE,
                       PEN + 1 + (cy + r * math.sin(a)) * SCALE, PEN)
        elif kind == "dot":
            _, cx, cy = stroke
            _stamp(canvas, PEN + 1 + cx * SCALE, PEN + 1 + cy * SCALE, PEN)
    rows = np.nonzero(canvas.any(axis=1))[0]
    cols = np.nonzero(canvas.any(axis=0))[0]
    return canvas[rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1].copy()
