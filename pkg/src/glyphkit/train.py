"""Training pipeline: labeled page images in, persisted language set out.

Stages: per-box feature extraction, per-glyph k-means shape clustering,
glyph inventory and frequency table construction, dictionary automata, and
bundle assembly.  Everything is deterministic — same training pairs in the
same order produce a byte-identical persisted language set.
"""

from __future__ import annotations

import hashlib
import logging
import math

import numpy as np

from .boxfile import BoxFile, bind_to_page
from .config import RunConfig
from .dawg import Dawg, build_dawg
from .features import EmptyGlyphError, glyph_features
from .imageio import PageImage
from .kernels import sqdist_matrix
from .langset import (LanguageSet, LanguageSetError, Prototype, UnicharEntry,
                      Unicharset, glyph_flags, quantized, save_language_set)

log = logging.getLogger(__name__)


def extract_training_features(pairs: list[tuple[PageImage, BoxFile]]):
    """One labeled feature vector per box, in page order then box order.

    Boxes over blank regions are skipped with a warning; an all-empty
    training set is an error.
    """
    samples: list[tuple[str, np.ndarray]] = []
    skipped = 0
    for page_idx, (page, bf) in enumerate(pairs):
        bind_to_page(bf, page)
        for box_idx, box in enumerate(bf.boxes, start=1):
            try:
                fv = glyph_features(page, box.rect)
            except EmptyGlyphError:
                skipped += 1
                log.warning("page %d (%s): box %d (%r) has no ink, skipped",
                            page_idx, page.source_path or "?", box_idx, box.label)
                continue
            samples.append((box.label, fv))
    if skipped:
        log.warning("skipped %d empty box(es) during feature extraction", skipped)
    if not samples:
        raise ValueError("all-empty training set: no box produced features")
    return samples


def _kmeans(vectors: np.ndarray, k: int, max_iter: int = 50):
    """Deterministic Lloyd iterations; returns (centroids, assignment).

    Seeds are evenly spaced indices into the lexicographically sorted sample
    list; ties in assignment go to the lowest centroid index; empty clusters
    are reseeded with the sample farthest from its current centroid.
    """
    n = len(vectors)
    order = sorted(range(n), key=lambda i: tuple(vectors[i]))
    vectors = vectors[order]
    centroids = vectors[[i * n // k for i in range(k)]].copy()
    assignment = np.full(n, -1, dtype=np.intp)
    prev_objective = math.inf
    for _ in range(max_iter):
        dists = sqdist_matrix(vectors, centroids)
        new_assignment = dists.argmin(axis=1)     # argmin takes the lowest index
        objective = dists[np.arange(n), new_assignment].sum()
        assert objective <= prev_objective + 1e-9, "k-means objective increased"
        prev_objective = objective
        for c in range(k):
            if not (new_assignment == c).any():
                worst = int(dists[np.arange(n), new_assignment].argmax())
                centroids[c] = vectors[worst]
                new_assignment[worst] = c
        if (new_assignment == assignment).all():
            break
        assignment = new_assignment
        for c in range(k):
            members = vectors[assignment == c]
            if len(members):
                centroids[c] = members.mean(axis=0)
    return centroids, assignment, vectors


def cluster_prototypes(samples, k_max: int = 4) -> list[Prototype]:
    """Per-glyph k-means prototypes, k = min(k_max, ceil(n/10), n).

    Prototypes with exactly equal centroids are merged (member counts summed),
    so degenerate duplicated data cannot inflate the classifier.
    """
    if not samples:
        raise ValueError("no samples to cluster")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    by_label: dict[str, list[np.ndarray]] = {}
    for label, fv in samples:
        by_label.setdefault(label, []).append(fv)
    protos: list[Prototype] = []
    for label, vecs in by_label.items():
        n = len(vecs)
        k = min(k_max, math.ceil(n / 10), n)
        matrix = np.array(vecs, dtype=np.float64)
        centroids, assignment, sorted_vecs = _kmeans(matrix, k)
        merged: dict[tuple, tuple[int, float]] = {}
        for c in range(k):
            members = sorted_vecs[assignment == c]
            if not len(members):
                continue
            key = tuple(float(v) for v in centroids[c])
            sq = ((members - centroids[c]) ** 2).sum(axis=1)
            count, sumsq = merged.get(key, (0, 0.0))
            merged[key] = (count + len(members), sumsq + float(sq.sum()))
        for key, (count, sumsq) in merged.items():
            protos.append(Prototype(label=label, centroid=key, member_count=count,
                                    spread=math.sqrt(sumsq / count)))
    return protos


def build_unicharset(samples) -> Unicharset:
    """Unique glyphs in first-occurrence order, with flags and counts."""
    if not samples:
        raise ValueError("no samples")
    counts: dict[str, int] = {}
    for label, _ in samples:
        counts[label] = counts.get(label, 0) + 1
    entries = tuple(UnicharEntry(glyph=g, flags=glyph_flags(g), count=c)
                    for g, c in counts.items())
    return Unicharset(entries)


def build_frequency_table(uc: Unicharset, total: int) -> list[tuple[str, float]]:
    if total <= 0:
        raise ValueError("zero-total frequency table")
    if total != sum(e.count for e in uc.entries):
        raise ValueError("total does not match unicharset counts")
    return [(e.glyph, e.count / total) for e in uc.entries]


def split_wordlists(words: list[str], freq_fraction: float):
    """Full wordlist plus its most frequent slice.

    The frequent slice takes the top ceil(fraction * unique) words ranked by
    occurrence count (ties broken lexicographically).
    """
    unique = sorted(set(words))
    if not unique:
        return [], []
    counts: dict[str, int] = {}
    for w in words:
        counts[w] = counts.get(w, 0) + 1
    n_freq = max(1, math.ceil(freq_fraction * len(unique)))
    ranked = sorted(unique, key=lambda w: (-counts[w], w))
    return unique, sorted(ranked[:n_freq])


def _file_hashes(paths) -> list[dict]:
    out = []
    for p in paths:
        digest = hashlib.sha256()
        with open(p, "rb") as fh:
            digest.update(fh.read())
        out.append({"path": str(p), "sha256": digest.hexdigest()})
    return out


def assemble_language_set(name: str, protos, uc: Unicharset, freq, *,
                          freq_dawg: Dawg, word_dawg: Dawg,
                          user_words=(), ambiguities=(),
                          reject_threshold: float,
                          root_dir: str, force: bool = False,
                          config: RunConfig | None = None,
                          training_files=()) -> LanguageSet:
    """Validate cross-consistency, persist the 8-file bundle, return the set.

    Values are quantized to the persisted precision first, so the returned
    set compares equal to a reload.
    """
    meta = {
        "config": (config or RunConfig()).to_dict(),
        "training_files": _file_hashes(training_files),
    }
    ls = LanguageSet(name=name, prototypes=tuple(protos), unicharset=uc,
                     freq_table=tuple(freq), freq_dawg=freq_dawg,
                     word_dawg=word_dawg, user_words=tuple(user_words),
                     ambiguities=tuple(ambiguities),
                     reject_threshold=reject_threshold, meta=meta)
    ls = quantized(ls)
    save_language_set(ls, root_dir, force=force)
    return ls


def train_language_set(pairs, name: str, root_dir: str, *,
                       config: RunConfig = RunConfig(),
                       words: list[str] | None = None,
                       user_words=(), ambiguities=(),
                       force: bool = False, training_files=()) -> LanguageSet:
    """Full pipeline: extract, cluster, inventory, dictionaries, assemble."""
    from .recognize import compute_reject_threshold

    samples = extract_training_features(pairs)
    protos = cluster_prototypes(samples, k_max=config.k_max)
    uc = build_unicharset(samples)
    freq = build_frequency_table(uc, total=len(samples))
    full, frequent = split_wordlists(words or [], config.freq_word_fraction)
    threshold = compute_reject_threshold(protos, samples,
                                         multiplier=config.reject_multiplier)
    return assemble_language_set(
        name, protos, uc, freq,
        freq_dawg=build_dawg(frequent), word_dawg=build_dawg(full),
        user_words=user_words, ambiguities=ambiguities,
        reject_threshold=threshold, root_dir=root_dir, force=force,
        config=config, training_files=training_files)


def class_sample_counts(samples) -> dict[str, int]:
    counts: dict[str, int] = {}
    for label, _ in samples:
        counts[label] = counts.get(label, 0) + 1
    return counts


__all__ = ["extract_training_features", "cluster_prototypes", "build_unicharset",
           "build_frequency_table", "split_wordlists", "assemble_language_set",
           "train_language_set", "class_sample_counts", "Prototype", "Unicharset",
           "LanguageSetError"]
