import logging
import os

import numpy as np
import pytest

from glyphkit.boxfile import BoxFile, GlyphBox
from glyphkit.config import RunConfig
from glyphkit.dawg import build_dawg, enumerate_words
from glyphkit.features import FEATURE_DIM
from glyphkit.imageio import page_from_mask
from glyphkit.langset import (FLAG_DIGIT, FLAG_LOWER, LanguageSetError,
                              load_language_set)
from glyphkit.train import (assemble_language_set, build_frequency_table,
                            build_unicharset, cluster_prototypes,
                            extract_training_features, split_wordlists,
                            train_language_set)


def _page_with_glyphs(positions, page_h=40, page_w=120):
    """Stamp 6x8 blocks at (row, col) positions; returns page + one box each."""
    mask = np.zeros((page_h, page_w), dtype=bool)
    boxes = []
    for label, r0, c0 in positions:
        mask[r0:r0 + 8, c0:c0 + 6] = True
        boxes.append(GlyphBox(label, c0, page_h - (r0 + 8), c0 + 6, page_h - r0))
    return page_from_mask(mask), BoxFile(tuple(boxes))


def test_extract_cardinality_and_order():
    page, bf = _page_with_glyphs([("a", 2, 2), ("b", 2, 20), ("c", 2, 40)])
    samples = extract_training_features([(page, bf)])
    assert [s[0] for s in samples] == ["a", "b", "c"]
    assert all(len(fv) == FEATURE_DIM for _, fv in samples)


def test_extract_skips_empty_boxes(caplog):
    page, bf = _page_with_glyphs([("a", 2, 2), ("b", 2, 20)])
    with_blank = BoxFile(bf.boxes + (GlyphBox("x", 60, 2, 70, 10),))
    with caplog.at_level(logging.WARNING):
        samples = extract_training_features([(page, with_blank)])
    assert [s[0] for s in samples] == ["a", "b"]
    assert any("no ink" in rec.message for rec in caplog.records)


def test_extract_all_empty_is_error():
    page = page_from_mask(np.zeros((20, 20), dtype=bool))
    bf = BoxFile((GlyphBox("a", 0, 0, 5, 5),))
    with pytest.raises(ValueError, match="all-empty"):
        extract_training_features([(page, bf)])


def test_extract_rejects_out_of_bounds_boxes():
    page, _ = _page_with_glyphs([("a", 2, 2)])
    bad = BoxFile((GlyphBox("a", 0, 0, 500, 5),))
    with pytest.raises(Exception):
        extract_training_features([(page, bad)])


def test_cluster_singleton():
    fv = np.linspace(0.0, 1.0, FEATURE_DIM)
    protos = cluster_prototypes([("q", fv)])
    assert len(protos) == 1
    p = protos[0]
    assert p.label == "q" and p.member_count == 1 and p.spread == 0.0
    assert np.allclose(p.centroid, fv)


def test_cluster_identical_vectors_collapse():
    fv = np.full(FEATURE_DIM, 0.25)
    protos = cluster_prototypes([("a", fv.copy()) for _ in range(20)])
    assert len(protos) == 1
    assert protos[0].member_count == 20
    assert protos[0].spread == 0.0


def test_cluster_two_blobs_recovers_means(rng):
    blob_a = np.zeros(FEATURE_DIM)
    blob_b = np.ones(FEATURE_DIM)
    samples = []
    points_a, points_b = [], []
    for _ in range(15):
        pa = blob_a + rng.normal(0, 0.01, FEATURE_DIM)
        pb = blob_b + rng.normal(0, 0.01, FEATURE_DIM)
        points_a.append(pa)
        points_b.append(pb)
        samples.append(("b", pa))
        samples.append(("b", pb))
    protos = cluster_prototypes(samples, k_max=2)
    assert len(protos) == 2
    means = sorted([np.array(points_a).mean(axis=0),
                    np.array(points_b).mean(axis=0)], key=lambda m: m.sum())
    got = sorted([np.array(p.centroid) for p in protos], key=lambda m: m.sum())
    for expected, actual in zip(means, got):
        assert np.abs(expected - actual).max() < 1e-9


def test_cluster_k_respects_sample_count(rng):
    samples = [("a", rng.random(FEATURE_DIM)) for _ in range(35)]
    protos = cluster_prototypes(samples, k_max=10)
    assert len(protos) <= 4          # ceil(35/10) = 4
    assert sum(p.member_count for p in protos) == 35


def test_unicharset_counting_and_flags():
    fv = np.zeros(FEATURE_DIM)
    uc = build_unicharset([("a", fv), ("b", fv), ("a", fv)])
    assert [(e.glyph, e.count) for e in uc.entries] == [("a", 2), ("b", 1)]
    assert uc.entries[0].flags == FLAG_LOWER
    uc_digit = build_unicharset([("7", fv)])
    assert uc_digit.entries[0].flags == FLAG_DIGIT


def test_unicharset_first_occurrence_order():
    fv = np.zeros(FEATURE_DIM)
    uc = build_unicharset([("z", fv), ("a", fv), ("z", fv)])
    assert uc.glyphs() == ["z", "a"]


def test_frequency_table():
    fv = np.zeros(FEATURE_DIM)
    uc = build_unicharset([("a", fv), ("a", fv), ("b", fv), ("b", fv)])
    freq = build_frequency_table(uc, 4)
    assert freq == [("a", 0.5), ("b", 0.5)]
    uc1 = build_unicharset([("x", fv)])
    assert build_frequency_table(uc1, 1) == [("x", 1.0)]
    uc2 = build_unicharset([("a", fv), ("b", fv), ("b", fv), ("b", fv)])
    assert build_frequency_table(uc2, 4) == [("a", 0.25), ("b", 0.75)]
    with pytest.raises(ValueError):
        build_frequency_table(uc2, 0)


def test_frequency_priors_sum_to_one(rng):
    fv = np.zeros(FEATURE_DIM)
    labels = [chr(97 + int(rng.integers(0, 26))) for _ in range(500)]
    uc = build_unicharset([(l, fv) for l in labels])
    freq = build_frequency_table(uc, 500)
    assert abs(sum(p for _, p in freq) - 1.0) <= 1e-12


def test_split_wordlists():
    words = ["the", "the", "the", "cat", "dog", "dog", "ant", "bee", "cow", "elk"]
    full, frequent = split_wordlists(words, 0.1)
    assert full == sorted(set(words))
    assert frequent == ["the"]
    full2, frequent2 = split_wordlists(words, 0.3)
    assert frequent2 == sorted(["the", "dog", "ant"])  # count then lexicographic
    assert split_wordlists([], 0.1) == ([], [])


def _minimal_set(tmp_path, name="mini", force=False):
    fv = np.zeros(FEATURE_DIM)
    samples = [("a", fv)]
    protos = cluster_prototypes(samples)
    uc = build_unicharset(samples)
    freq = build_frequency_table(uc, 1)
    return assemble_language_set(
        name, protos, uc, freq, freq_dawg=build_dawg([]), word_dawg=build_dawg([]),
        reject_threshold=0.5, root_dir=str(tmp_path), force=force)


def test_assemble_minimal_round_trip(tmp_path):
    ls = _minimal_set(tmp_path)
    path = os.path.join(str(tmp_path), "mini")
    assert sorted(os.listdir(path)) == sorted(
        ["unicharset", "prototypes", "freq-table", "freq-dawg", "word-dawg",
         "user-words", "ambiguities", "meta"])
    assert load_language_set(path) == ls


def test_assemble_name_collision(tmp_path):
    _minimal_set(tmp_path)
    with pytest.raises(LanguageSetError, match="already exists"):
        _minimal_set(tmp_path)
    _minimal_set(tmp_path, force=True)


def test_assemble_proto_without_unicharset_entry(tmp_path):
    fv = np.zeros(FEATURE_DIM)
    protos = cluster_prototypes([("a", fv), ("b", fv + 1)])
    uc = build_unicharset([("a", fv)])
    with pytest.raises(LanguageSetError, match="missing from unicharset"):
        assemble_language_set("bad", protos, uc, build_frequency_table(uc, 1),
                              freq_dawg=build_dawg([]), word_dawg=build_dawg([]),
                              reject_threshold=0.5, root_dir=str(tmp_path))


def _alphabet_pairs(rng, n_pages=2):
    pages = []
    for _ in range(n_pages):
        positions = []
        for i, ch in enumerate("abcdefghijklmnopqrstuvwxyz"):
            r0 = 2 + 12 * (i // 10)
            c0 = 2 + 11 * (i % 10)
            positions.append((ch, r0, c0))
        page, bf = _page_with_glyphs(positions, page_h=60, page_w=120)
        # vary ink a little per page so clustering sees real variance
        noisy = page.ink.copy()
        flips = rng.random(noisy.shape) < 0.02
        noisy ^= flips
        pages.append((page_from_mask(noisy | page.ink), bf))
    return pages


def test_full_alphabet_training(tmp_path, rng):
    pairs = _alphabet_pairs(rng, n_pages=3)
    ls = train_language_set(pairs, "alpha", str(tmp_path))
    assert len(ls.unicharset) == 26
    assert len(ls.prototypes) >= 26
    assert {p.label for p in ls.prototypes} == set("abcdefghijklmnopqrstuvwxyz")


def test_training_is_deterministic(tmp_path, rng):
    pairs = _alphabet_pairs(rng)
    words = ["cat", "dog", "cat", "bird"]
    ls1 = train_language_set(pairs, "one", str(tmp_path / "a"), words=words)
    ls2 = train_language_set(pairs, "one", str(tmp_path / "b"), words=words)
    assert ls1 == ls2
    for fname in os.listdir(tmp_path / "a" / "one"):
        a = (tmp_path / "a" / "one" / fname).read_bytes()
        b = (tmp_path / "b" / "one" / fname).read_bytes()
        assert a == b, fname


def test_every_label_has_prototype_and_entry(tmp_path, rng):
    pairs = _alphabet_pairs(rng)
    ls = train_language_set(pairs, "inv", str(tmp_path))
    glyphs = set(ls.unicharset.glyphs())
    assert {p.label for p in ls.prototypes} == glyphs
    assert enumerate_words(ls.word_dawg) == []


def test_trained_dictionaries_from_wordlist(tmp_path, rng):
    pairs = _alphabet_pairs(rng)
    words = ["alpha", "beta", "beta", "gamma"]
    config = RunConfig(freq_word_fraction=0.3)   # ceil(0.3 * 3) = 1 word
    ls = train_language_set(pairs, "dict", str(tmp_path), words=words, config=config)
    assert enumerate_words(ls.word_dawg) == ["alpha", "beta", "gamma"]
    assert enumerate_words(ls.freq_dawg) == ["beta"]
