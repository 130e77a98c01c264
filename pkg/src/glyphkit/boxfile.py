"""Box-file codec: the ground-truth labeling format.

One character per line, `label left bottom right top [page]`, single spaces,
bottom-left origin, half-open high edges.  Parsing is all-or-nothing: a file
with any malformed line is rejected with a diagnostic per line, because a
partially loaded ground-truth file corrupts training silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Rect
from .imageio import PageImage

PLACEHOLDER_LABEL = "*"


class BoxFileError(ValueError):
    """Carries one (line_number, message) diagnostic per malformed line."""

    def __init__(self, diagnostics: list[tuple[int, str]]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(f"{msg} at line {ln}" for ln, msg in diagnostics))


@dataclass(frozen=True)
class GlyphBox:
    label: str
    left: int
    bottom: int
    right: int
    top: int
    page_index: int = 0

    def __post_init__(self):
        if len(self.label) != 1:
            raise ValueError(f"label must be a single character, got {self.label!r}")
        if self.left >= self.right or self.bottom >= self.top:
            raise ValueError(f"empty box {self.label!r} {self.left} {self.bottom} "
                             f"{self.right} {self.top}")
        if self.page_index < 0:
            raise ValueError("negative page index")

    @property
    def rect(self) -> Rect:
        return Rect(self.left, self.bottom, self.right, self.top)


@dataclass(frozen=True)
class BoxFile:
    boxes: tuple[GlyphBox, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)


def parse_boxfile(content: str) -> BoxFile:
    """Parse box-file text; raises BoxFileError listing every malformed line."""
    boxes = []
    diagnostics = []
    for lineno, line in enumerate(content.split("\n"), start=1):
        if line == "":
            continue
        fields = line.split(" ")
        if len(fields) not in (5, 6):
            diagnostics.append((lineno, f"expected 5 or 6 fields, got {len(fields)}"))
            continue
        label = fields[0]
        if len(label) != 1:
            diagnostics.append((lineno, f"label {label!r} is not a single character"))
            continue
        try:
            coords = [int(f) for f in fields[1:5]]
        except ValueError:
            diagnostics.append((lineno, "non-integer coordinate"))
            continue
        left, bottom, right, top = coords
        page = 0
        if len(fields) == 6:
            try:
                page = int(fields[5])
            except ValueError:
                diagnostics.append((lineno, "non-integer page index"))
                continue
        if page < 0:
            diagnostics.append((lineno, "negative page index"))
            continue
        if left >= right or bottom >= top:
            diagnostics.append((lineno, "empty box"))
            continue
        boxes.append(GlyphBox(label, left, bottom, right, top, page))
    if diagnostics:
        raise BoxFileError(diagnostics)
    return BoxFile(tuple(boxes))


def serialize_boxfile(bf: BoxFile) -> str:
    """One line per box, page index always written, exactly one final newline."""
    return "".join(f"{b.label} {b.left} {b.bottom} {b.right} {b.top} {b.page_index}\n"
                   for b in bf.boxes)


def bind_to_page(bf: BoxFile, page: PageImage) -> BoxFile:
    """Validate every box against page bounds; errors list offending lines."""
    diagnostics = []
    for lineno, b in enumerate(bf.boxes, start=1):
        if b.left < 0 or b.bottom < 0 or b.right > page.width or b.top > page.height:
            diagnostics.append((lineno, f"box {b.label!r} {b.left} {b.bottom} {b.right} "
                                        f"{b.top} exceeds {page.width}x{page.height} page"))
    if diagnostics:
        raise BoxFileError(diagnostics)
    return bf


def load_boxfile(path: str) -> BoxFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_boxfile(fh.read())


def save_boxfile(bf: BoxFile, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize_boxfile(bf))
