"""Synthetic handwriting corpus generation.

Renders pages of perturbed test-font glyphs (random shifts up to 2 px plus
10% pixel-flip noise inside each glyph's box), writes PBM images, exact
ground-truth box files, and a corpus manifest with the standard split:
3 isolated-character pages + 1 free-flow page for training, 1 + 1 for test.
All randomness goes through one seeded generator, so a given seed always
produces a byte-identical corpus.
"""

from __future__ import annotations

import os

import numpy as np

from .boxfile import BoxFile, GlyphBox, save_boxfile
from .imageio import write_pbm
from .manifest import ManifestEntry, write_manifest
from .synthfont import ALPHABET, render_template

LEXICON = [
    "the", "quick", "brown", "fox", "jumps", "over", "lazy", "dog", "pack",
    "my", "box", "with", "five", "dozen", "liquor", "jugs", "vexed", "zebras",
    "waltz", "nymph", "quartz", "jive", "how", "big", "black", "amaze",
    "jack", "for", "wind", "grey",
]

MAX_SHIFT = 2
NOISE_RATE = 0.10


def _stamp_glyph(page: np.ndarray, letter: str, x: int, y: int,
                 rng: np.random.Generator, noise: bool = True):
    """Place one perturbed glyph; returns its ground-truth GlyphBox or None."""
    tmpl = render_template(letter)
    th, tw = tmpl.shape
    dx = int(rng.integers(-MAX_SHIFT, MAX_SHIFT + 1))
    dy = int(rng.integers(-MAX_SHIFT, MAX_SHIFT + 1))
    r0, c0 = y + dy, x + dx
    h, w = page.shape
    if r0 < 0 or c0 < 0 or r0 + th > h or c0 + tw > w:
        return None
    region = tmpl.copy()
    if noise:
        flips = rng.random(region.shape) < NOISE_RATE
        region = region ^ flips
        if region.sum() < 8:           # noise nearly erased the glyph; keep it clean
            region = tmpl.copy()
    page[r0:r0 + th, c0:c0 + tw] |= region.astype(bool)
    rows = np.nonzero(region.any(axis=1))[0]
    cols = np.nonzero(region.any(axis=0))[0]
    top_row, bot_row = r0 + rows[0], r0 + rows[-1]
    left_col, right_col = c0 + cols[0], c0 + cols[-1]
    return GlyphBox(letter, left=int(left_col), bottom=int(h - 1 - bot_row),
                    right=int(right_col) + 1, top=int(h - top_row))


def render_isolated_page(rng: np.random.Generator, repetitions: int = 4,
                         noise: bool = True):
    """Grid page of isolated characters: the alphabet repeated `repetitions` times."""
    letters = list(ALPHABET) * repetitions
    per_row = 13
    cell_w, cell_h = 30, 34
    margin = 12
    n_rows = (len(letters) + per_row - 1) // per_row
    page = np.zeros((2 * margin + n_rows * cell_h, 2 * margin + per_row * cell_w),
                    dtype=bool)
    boxes = []
    for i, letter in enumerate(letters):
        x = margin + (i % per_row) * cell_w
        y = margin + (i // per_row) * cell_h
        box = _stamp_glyph(page, letter, x, y, rng, noise)
        if box is not None:
            boxes.append(box)
    return page, BoxFile(tuple(boxes))


def render_freeflow_page(rng: np.random.Generator, n_lines: int = 7,
                         words_per_line: int = 4, noise: bool = True):
    """Left-to-right words with wide inter-word gaps, one text flow per line.

    Characters advance by their actual stamped width plus a small gap, so
    intra-word gaps stay safely under the word-split threshold.
    """
    char_gap = 3
    word_gap = 26
    line_pitch = 42
    margin = 14
    width = margin * 2 + words_per_line * (7 * 16 + word_gap)
    page = np.zeros((margin * 2 + n_lines * line_pitch, width), dtype=bool)
    h = page.shape[0]
    boxes = []
    for li in range(n_lines):
        x = margin
        y = margin + li * line_pitch
        for _ in range(words_per_line):
            word = LEXICON[int(rng.integers(0, len(LEXICON)))]
            if x + len(word) * 16 + word_gap >= width:
                break
            for letter in word:
                box = _stamp_glyph(page, letter, x, y, rng, noise)
                if box is not None:
                    boxes.append(box)
                    x = box.right + char_gap
                else:
                    x += 16
            x += word_gap
    _ = h
    return page, BoxFile(tuple(boxes))


def generate_corpus(out_dir: str, user: str = "user1", seed: int = 20260101,
                    train_reps: int = 4, noise: bool = True) -> str:
    """Write the full synthetic corpus; returns the manifest path."""
    os.makedirs(out_dir, exist_ok=True)
    rng = np.random.Generator(np.random.PCG64(seed))
    entries = []

    def emit(stem: str, role: str, dataset: int, page, boxes):
        image_path = os.path.join(out_dir, stem + ".pbm")
        box_path = os.path.join(out_dir, stem + ".box")
        write_pbm(page, image_path)
        save_boxfile(boxes, box_path)
        entries.append(ManifestEntry(user=user, role=role, dataset=dataset,
                                     image_path=image_path, box_path=box_path))

    for i in range(3):
        page, boxes = render_isolated_page(rng, repetitions=train_reps, noise=noise)
        emit(f"{user}_train_iso_{i}", "train", 1, page, boxes)
    page, boxes = render_freeflow_page(rng, noise=noise)
    emit(f"{user}_train_flow_0", "train", 2, page, boxes)

    page, boxes = render_isolated_page(rng, repetitions=train_reps, noise=noise)
    emit(f"{user}_test_iso_0", "test", 1, page, boxes)
    page, boxes = render_freeflow_page(rng, noise=noise)
    emit(f"{user}_test_flow_0", "test", 2, page, boxes)

    manifest_path = os.path.join(out_dir, "manifest.tsv")
    write_manifest(entries, manifest_path)
    return manifest_path


def main(argv=None) -> int:
    import argparse

    parser = argparse.ArgumentParser(description="generate a synthetic handwriting corpus")
    parser.add_argument("out_dir")
    parser.add_argument("--user", default="user1")
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument("--reps", type=int, default=4)
    parser.add_argument("--clean", action="store_true", help="disable pixel noise")
    args = parser.parse_args(argv)
    path = generate_corpus(args.out_dir, user=args.user, seed=args.seed,
                           train_reps=args.reps, noise=not args.clean)
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
