"""Nearest-prototype classification and page-level recognition.

A candidate is classified by Euclidean distance over the 66-dim feature
vector to the nearest prototype; distances beyond the language set's reject
threshold yield REJECT (represented as None).  Exact distance ties are broken
by higher glyph prior, then lexicographically.  Dictionary correction is
implemented but off by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .dawg import contains, near_matches
from .features import glyph_features
from .geometry import Rect
from .imageio import PageImage, ensure_binarized
from .kernels import sqdist_matrix
from .langset import LanguageSet
from .segment import segment_page

REJECT = None          # classifier decision for "declined to classify"
REJECT_CHAR = "~"      # rendering of REJECT in text/box output
REJECTED_WORD = "####"  # rendering of a rejected word in text output


@dataclass(frozen=True)
class RecChar:
    rect: Rect
    glyph: str | None          # None = REJECT
    distance: float


@dataclass(frozen=True)
class RecWord:
    chars: tuple[RecChar, ...]
    rejected: bool = False
    dictionary_corrected: bool = False
    corrected_text: str | None = None

    def text(self) -> str:
        if self.corrected_text is not None:
            return self.corrected_text
        return "".join(REJECT_CHAR if c.glyph is None else c.glyph for c in self.chars)


@dataclass(frozen=True)
class RecLine:
    words: tuple[RecWord, ...]


@dataclass(frozen=True)
class RecognizedPage:
    lines: tuple[RecLine, ...] = field(default_factory=tuple)


def _rank_key(priors: dict[str, float], label: str):
    # ties: higher prior first, then lexicographic
    return (-priors.get(label, 0.0), label)


def classify_vector(proto_matrix: np.ndarray, labels: list[str],
                    priors: dict[str, float], fv: np.ndarray,
                    reject_threshold: float):
    sq = sqdist_matrix(fv.reshape(1, -1), proto_matrix)[0]
    best = int(sq.argmin())
    best_sq = sq[best]
    tied = np.nonzero(sq == best_sq)[0]
    if len(tied) > 1:
        best = min(tied, key=lambda i: _rank_key(priors, labels[i]))
    distance = math.sqrt(best_sq)
    if distance > reject_threshold:
        return REJECT, distance
    return labels[best], distance


def classify_glyph(ls: LanguageSet, fv: np.ndarray):
    """(glyph | REJECT, distance) for one feature vector."""
    return classify_vector(ls.proto_matrix(), [p.label for p in ls.prototypes],
                           ls.priors(), fv, ls.reject_threshold)


def compute_reject_threshold(protos, samples, multiplier: float = 1.5) -> float:
    """Reject radius from the training distance distribution.

    Takes each sample's distance to the nearest prototype of its own class,
    the 99th percentile of those (nearest rank, index 99n/100 of the sorted
    list), times `multiplier`, floored at 1e-6 to survive degenerate data.
    """
    if not samples:
        raise ValueError("no training samples")
    by_label: dict[str, list] = {}
    for p in protos:
        by_label.setdefault(p.label, []).append(p.centroid)
    dists = []
    for label, fv in samples:
        mat = np.array(by_label[label], dtype=np.float64)
        dists.append(math.sqrt(sqdist_matrix(fv.reshape(1, -1), mat)[0].min()))
    dists.sort()
    rank = (99 * len(dists)) // 100
    return max(1e-6, dists[rank] * multiplier)


def _apply_ambiguities(word: str, ambiguities) -> str:
    """Longest-source-first, leftmost, non-overlapping substitutions."""
    ordered = sorted(ambiguities, key=lambda st: (-len(st[0]), st[0]))
    taken = [False] * len(word)
    pieces: list[tuple[int, int, str]] = []
    for src, tgt in ordered:
        if not src:
            continue
        start = 0
        while True:
            idx = word.find(src, start)
            if idx < 0:
                break
            if not any(taken[idx:idx + len(src)]):
                for i in range(idx, idx + len(src)):
                    taken[i] = True
                pieces.append((idx, len(src), tgt))
            start = idx + 1
    if not pieces:
        return word
    pieces.sort()
    out = []
    pos = 0
    for idx, length, tgt in pieces:
        out.append(word[pos:idx])
        out.append(tgt)
        pos = idx + length
    out.append(word[pos:])
    return "".join(out)


def _in_dictionary(ls: LanguageSet, word: str) -> bool:
    return contains(ls.word_dawg, word) or word in ls.user_words


def _correct_word(ls: LanguageSet, word: RecWord) -> RecWord:
    if word.rejected or any(c.glyph is None for c in word.chars):
        return word                      # REJECTs make a word ineligible
    text = word.text()
    if _in_dictionary(ls, text):
        return word                      # never touch accepted words
    candidate = _apply_ambiguities(text, ls.ambiguities)
    if candidate != text and _in_dictionary(ls, candidate):
        return RecWord(word.chars, word.rejected, True, candidate)
    for dawg in (ls.freq_dawg, ls.word_dawg):
        hits = near_matches(dawg, candidate)
        if hits:
            return RecWord(word.chars, word.rejected, True, hits[0][0])
    return word


def recognize_page(ls: LanguageSet, page: PageImage,
                   use_dictionary: bool = False,
                   config: RunConfig = RunConfig()) -> RecognizedPage:
    """Segment and classify a page against a trained language set."""
    if not ls.prototypes:
        raise ValueError("untrained language set")
    page = ensure_binarized(page)
    segmented = segment_page(page, config.segment)
    proto_matrix = ls.proto_matrix()
    labels = [p.label for p in ls.prototypes]
    priors = ls.priors()
    lines = []
    for line in segmented.lines:
        words = []
        for word in line.words:
            chars = []
            for cand in word.candidates:
                fv = glyph_features(page, cand.bbox)
                glyph, dist = classify_vector(proto_matrix, labels, priors, fv,
                                              ls.reject_threshold)
                chars.append(RecChar(rect=cand.bbox, glyph=glyph, distance=dist))
            n_rej = sum(1 for c in chars if c.glyph is None)
            rejected = n_rej > config.word_reject_fraction * len(chars)
            rec = RecWord(chars=tuple(chars), rejected=rejected)
            if use_dictionary:
                rec = _correct_word(ls, rec)
            words.append(rec)
        lines.append(RecLine(words=tuple(words)))
    return RecognizedPage(tuple(lines))


def flatten_predictions(rp: RecognizedPage):
    """(rect, glyph|None, in_rejected_word) per candidate, for the evaluator."""
    out = []
    for line in rp.lines:
        for word in line.words:
            for c in word.chars:
                out.append((c.rect, c.glyph, word.rejected))
    return out


def emit_output(rp: RecognizedPage, format: str = "text") -> str:
    """Render as plain text or as a relabelable box file."""
    if format == "text":
        lines = []
        for line in rp.lines:
            parts = [REJECTED_WORD if w.rejected else w.text() for w in line.words]
            lines.append(" ".join(parts))
        return "".join(ln + "\n" for ln in lines)
    if format == "boxes":
        from .boxfile import BoxFile, GlyphBox, serialize_boxfile
        boxes = []
        for line in rp.lines:
            for word in line.words:
                for c in word.chars:
                    glyph = REJECT_CHAR if c.glyph is None else c.glyph
                    boxes.append(GlyphBox(glyph, c.rect.left, c.rect.bottom,
                                          c.rect.right, c.rect.top, 0))
        return serialize_boxfile(BoxFile(tuple(boxes)))
    raise ValueError(f"unknown output format {format!r}")
