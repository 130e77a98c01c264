"""Recognition scoring: alignment, outcome counts, and report rendering.

Every ground-truth character lands in exactly one of four buckets:
  SC   true classification
  Misc misclassification
  SF   under-segmentation (one detected segment spanning several characters)
  Rej  rejection (classifier reject, rejected word, or no matching segment)

SC/Misc/SF percentages are taken over the non-rejected population, so they
close to 100; Rej is reported over all ground-truth characters.  The ratio
c_t/(c_m+c_s) sometimes quoted for this kind of accounting exceeds 100%
whenever correct classifications dominate, so it cannot be what produced
closed rows; the closed form is used here and the discrepancy is documented
in the README.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boxfile import BoxFile
from .geometry import Rect, coverage, iou

IOU_MATCH_THRESHOLD = 0.5
COVER_THRESHOLD = 0.5


@dataclass(frozen=True)
class EvalCounts:
    c_t: int = 0       # true classifications
    c_m: int = 0       # misclassifications
    c_s: int = 0       # under-segmented ground-truth characters
    c_r: int = 0       # rejected ground-truth characters
    total_gt: int = 0

    def __post_init__(self):
        if self.c_t + self.c_m + self.c_s + self.c_r != self.total_gt:
            raise ValueError(f"counts {self} do not close to the total")

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(self.c_t + other.c_t, self.c_m + other.c_m,
                          self.c_s + other.c_s, self.c_r + other.c_r,
                          self.total_gt + other.total_gt)


@dataclass(frozen=True)
class Percentages:
    sc: float | None
    misc: float | None
    sf: float | None
    rej: float | None


@dataclass
class EvalReport:
    per_dataset: dict[int, EvalCounts] = field(default_factory=dict)
    per_glyph: dict[str, EvalCounts] = field(default_factory=dict)

    @property
    def overall(self) -> EvalCounts:
        total = EvalCounts()
        for counts in self.per_dataset.values():
            total = total + counts
        return total


@dataclass(frozen=True)
class Alignment:
    # gt index -> predicted index for IoU-matched pairs
    matched: dict[int, int]
    under_segmented: frozenset[int]
    unmatched: frozenset[int]


def align_boxes(predicted: list[Rect], truth: BoxFile) -> Alignment:
    """Greedy best-IoU matching, then under-segmentation detection.

    Pairs below 0.5 IoU never match.  An unmatched ground-truth box counts as
    under-segmented when some predicted box covers at least half of it and at
    least half of another ground-truth box.
    """
    gt_rects = [b.rect for b in truth.boxes]
    pairs = []
    for gi, g in enumerate(gt_rects):
        for pi, p in enumerate(predicted):
            v = iou(g, p)
            if v >= IOU_MATCH_THRESHOLD:
                pairs.append((-v, gi, pi))
    pairs.sort()
    matched: dict[int, int] = {}
    used_pred: set[int] = set()
    for _, gi, pi in pairs:
        if gi in matched or pi in used_pred:
            continue
        matched[gi] = pi
        used_pred.add(pi)

    under: set[int] = set()
    leftovers = [gi for gi in range(len(gt_rects)) if gi not in matched]
    for gi in leftovers:
        g = gt_rects[gi]
        for p in predicted:
            if coverage(g, p) < COVER_THRESHOLD:
                continue
            if any(coverage(gt_rects[gj], p) >= COVER_THRESHOLD
                   for gj in range(len(gt_rects)) if gj != gi):
                under.add(gi)
                break
    unmatched = frozenset(gi for gi in leftovers if gi not in under)
    return Alignment(matched=matched, under_segmented=frozenset(under),
                     unmatched=unmatched)


def count_outcomes(alignment: Alignment, predicted, truth: BoxFile) -> EvalCounts:
    """Bucket every ground-truth box; `predicted` holds (rect, glyph|None,
    in_rejected_word) triples as produced by recognize.flatten_predictions."""
    c_t = c_m = c_s = c_r = 0
    for gi, gt_box in enumerate(truth.boxes):
        if gi in alignment.under_segmented:
            c_s += 1
        elif gi in alignment.matched:
            _, glyph, in_rejected = predicted[alignment.matched[gi]]
            if glyph is None or in_rejected:
                c_r += 1
            elif glyph == gt_box.label:
                c_t += 1
            else:
                c_m += 1
        else:
            c_r += 1
    return EvalCounts(c_t, c_m, c_s, c_r, len(truth.boxes))


def count_outcomes_per_glyph(alignment: Alignment, predicted,
                             truth: BoxFile) -> dict[str, EvalCounts]:
    """count_outcomes broken down by ground-truth glyph."""
    buckets: dict[str, list[int]] = {}
    for gi, gt_box in enumerate(truth.boxes):
        tally = buckets.setdefault(gt_box.label, [0, 0, 0, 0])
        if gi in alignment.under_segmented:
            tally[2] += 1
        elif gi in alignment.matched:
            _, glyph, in_rejected = predicted[alignment.matched[gi]]
            if glyph is None or in_rejected:
                tally[3] += 1
            elif glyph == gt_box.label:
                tally[0] += 1
            else:
                tally[1] += 1
        else:
            tally[3] += 1
    return {g: EvalCounts(t[0], t[1], t[2], t[3], sum(t))
            for g, t in buckets.items()}


def evaluate_page(ls, page, truth: BoxFile, config=None):
    """Recognize one page and score it; returns (EvalCounts, per-glyph dict)."""
    from .config import RunConfig
    from .recognize import flatten_predictions, recognize_page

    rp = recognize_page(ls, page, use_dictionary=(config or RunConfig()).use_dictionary,
                        config=config or RunConfig())
    predicted = flatten_predictions(rp)
    alignment = align_boxes([p[0] for p in predicted], truth)
    return (count_outcomes(alignment, predicted, truth),
            count_outcomes_per_glyph(alignment, predicted, truth))


def evaluate_pages(ls, entries, config=None) -> EvalReport:
    """Score (dataset_id, page, truth) triples into one report."""
    report = EvalReport()
    for dataset_id, page, truth in entries:
        counts, per_glyph = evaluate_page(ls, page, truth, config)
        report.per_dataset[dataset_id] = report.per_dataset.get(
            dataset_id, EvalCounts()) + counts
        for glyph, c in per_glyph.items():
            report.per_glyph[glyph] = report.per_glyph.get(glyph, EvalCounts()) + c
    return report


def accuracy(counts: EvalCounts) -> Percentages:
    """SC/Misc/SF over the non-rejected population; Rej over all ground truth."""
    base = counts.c_t + counts.c_m + counts.c_s
    rej = 100.0 * counts.c_r / counts.total_gt if counts.total_gt else None
    if base == 0:
        return Percentages(sc=None, misc=None, sf=None, rej=rej)
    return Percentages(sc=100.0 * counts.c_t / base,
                       misc=100.0 * counts.c_m / base,
                       sf=100.0 * counts.c_s / base,
                       rej=rej)


def _fmt(v: float | None) -> str:
    return "n/a" if v is None else f"{v:.2f}"


def render_report(reports: list[tuple[str, EvalReport]]) -> str:
    """Per-user table (datasets as columns, SC/Misc/SF/Rej rows), then a
    per-glyph success/failure table sorted by glyph."""
    out = []
    for user, report in reports:
        out.append(f"=== {user} ===")
        datasets = sorted(report.per_dataset)
        cols = [f"Dataset-{d}" for d in datasets] + ["Overall"]
        out.append("       " + "".join(f"{c:>12}" for c in cols))
        rows = {
            "SC": [], "Misc": [], "SF": [], "Rej": [],
        }
        for d in (1, 2):
            if d not in report.per_dataset:
                continue
            pct = accuracy(report.per_dataset[d])
            rows["SC"].append(pct.sc)
            rows["Misc"].append(pct.misc)
            rows["SF"].append(pct.sf)
            rows["Rej"].append(pct.rej)
        pct = accuracy(report.overall)
        rows["SC"].append(pct.sc)
        rows["Misc"].append(pct.misc)
        rows["SF"].append(pct.sf)
        rows["Rej"].append(pct.rej)
        for label, vals in rows.items():
            out.append(f"{label:<7}" + "".join(f"{_fmt(v):>12}" for v in vals))
        out.append("")
        out.append("glyph  total     SC   Misc     SF    Rej")
        for glyph in sorted(report.per_glyph):
            counts = report.per_glyph[glyph]
            pct = accuracy(counts)
            out.append(f"{glyph:<5}{counts.total_gt:>7}"
                       f"{_fmt(pct.sc):>7}{_fmt(pct.misc):>7}"
                       f"{_fmt(pct.sf):>7}{_fmt(pct.rej):>7}")
        out.append("")
    return "\n".join(out) + "\n" if out else ""


def render_tsv(reports: list[tuple[str, EvalReport]]) -> str:
    """Machine-readable rows: user dataset sc misc sf rej c_t c_m c_s c_r total."""
    lines = ["user\tdataset\tsc\tmisc\tsf\trej\tc_t\tc_m\tc_s\tc_r\ttotal"]
    for user, report in reports:
        items = [(str(d), report.per_dataset[d]) for d in sorted(report.per_dataset)]
        items.append(("overall", report.overall))
        for dataset, counts in items:
            pct = accuracy(counts)
            lines.append("\t".join([
                user, dataset, _fmt(pct.sc), _fmt(pct.misc), _fmt(pct.sf),
                _fmt(pct.rej), str(counts.c_t), str(counts.c_m), str(counts.c_s),
                str(counts.c_r), str(counts.total_gt)]))
    return "\n".join(lines) + "\n"


def render_svg_chart(report: EvalReport, width: int = 640, height: int = 240) -> str:
    """Per-glyph SC percentage bar chart; a dependency-free SVG rendering."""
    glyphs = sorted(report.per_glyph)
    bars = []
    n = max(1, len(glyphs))
    bar_w = max(4, (width - 40) // n - 2)
    for i, glyph in enumerate(glyphs):
        pct = accuracy(report.per_glyph[glyph])
        sc = pct.sc if pct.sc is not None else 0.0
        bar_h = (height - 40) * sc / 100.0
        x = 30 + i * (bar_w + 2)
        y = height - 20 - bar_h
        bars.append(f'<rect x="{x}" y="{y:.1f}" width="{bar_w}" '
                    f'height="{bar_h:.1f}" fill="#4477aa"/>')
        bars.append(f'<text x="{x + bar_w / 2:.1f}" y="{height - 6}" '
                    f'font-size="10" text-anchor="middle">{glyph}</text>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}">\n'
            f'<text x="4" y="14" font-size="11">per-glyph SC %</text>\n'
            + "\n".join(bars) + "\n</svg>\n")
