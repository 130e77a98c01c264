"""Acceptance gate: one test per release criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import contextlib
import os
import string
import time

import numpy as np
import pytest

import glyphkit.kernels
from glyphkit.boxfile import (BoxFile, BoxFileError, GlyphBox, load_boxfile,
                              parse_boxfile, serialize_boxfile)
from glyphkit.config import RunConfig
from glyphkit.dawg import build_dawg, enumerate_words, near_matches
from glyphkit.evaluate import (Alignment, EvalCounts, accuracy, align_boxes,
                               count_outcomes, evaluate_pages, render_report,
                               render_tsv)
from glyphkit.features import FEATURE_DIM
from glyphkit.geometry import Rect
from glyphkit.imageio import load_page, otsu_threshold
from glyphkit.langset import Prototype, UnicharEntry, Unicharset, glyph_flags
from glyphkit.manifest import load_manifest
from glyphkit.recognize import classify_glyph, emit_output, recognize_page
from glyphkit.synthcorpus import generate_corpus
from glyphkit.train import train_language_set

from oracles import (levenshtein, nearest_prototype_scan, otsu_brute_force,
                     trie_merge_state_count)

GOLDEN_REPORT = os.path.join(os.path.dirname(__file__), "data", "golden_report.txt")


@contextlib.contextmanager
def criterion(name: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}  ({time.perf_counter() - start:.2f}s)")


def test_report_closure_property():
    with criterion("report closure: SC+Misc+SF = 100 +- 0.01, counts close"):
        start = time.perf_counter()
        rng = np.random.Generator(np.random.PCG64(7))
        for _ in range(1000):
            c_t, c_m, c_s, c_r = (int(rng.integers(0, 10_000)) for _ in range(4))
            if c_t + c_m + c_s == 0:
                c_t = 1
            counts = EvalCounts(c_t, c_m, c_s, c_r, c_t + c_m + c_s + c_r)
            assert counts.c_t + counts.c_m + counts.c_s + counts.c_r == counts.total_gt
            pct = accuracy(counts)
            assert abs(pct.sc + pct.misc + pct.sf - 100.0) <= 0.01
        assert time.perf_counter() - start < 1.0


def _train_and_score(manifest_path: str, langs_dir: str):
    """train -> recognize -> eval over an existing corpus."""
    manifest = load_manifest(manifest_path)
    train_entries = manifest.select("user1", "train")
    pairs = [(load_page(e.image_path), load_boxfile(e.box_path))
             for e in train_entries]
    ls = train_language_set(
        pairs, "user1", langs_dir,
        training_files=[p for e in train_entries for p in (e.image_path, e.box_path)])
    test_entries = manifest.select("user1", "test")
    outputs = {}
    for e in test_entries:
        rp = recognize_page(ls, load_page(e.image_path))
        stem = os.path.basename(e.image_path)
        outputs[stem + ".txt"] = emit_output(rp, "text")
        outputs[stem + ".box"] = emit_output(rp, "boxes")
    triples = [(e.dataset, load_page(e.image_path), load_boxfile(e.box_path))
               for e in test_entries]
    report = evaluate_pages(ls, triples, RunConfig())
    return ls, os.path.join(langs_dir, "user1"), outputs, report


def _run_pipeline(workdir: str, seed: int = 20260101):
    """generate -> train -> recognize -> eval; returns artifact paths/strings."""
    corpus_dir = os.path.join(workdir, "corpus")
    manifest_path = generate_corpus(corpus_dir, seed=seed)
    return _train_and_score(manifest_path, os.path.join(workdir, "langs"))


def test_synthetic_end_to_end(tmp_path):
    with criterion("synthetic end-to-end: dataset-1 SC >= 95%, SF+Rej <= 3%, <= 30s"):
        start = time.perf_counter()
        _, _, _, report = _run_pipeline(str(tmp_path))
        counts = report.per_dataset[1]
        pct = accuracy(counts)
        sf_rej = 100.0 * (counts.c_s + counts.c_r) / counts.total_gt
        assert pct.sc >= 95.0, f"dataset-1 SC {pct.sc:.2f} < 95"
        assert sf_rej <= 3.0, f"dataset-1 SF+Rej {sf_rej:.2f} > 3"
        assert time.perf_counter() - start <= 30.0


def test_dawg_language_equivalence():
    with criterion("DAWG language == dedup input (50 lists); minimal vs trie oracle"):
        start = time.perf_counter()
        rng = np.random.Generator(np.random.PCG64(11))
        letters = string.ascii_lowercase
        for trial in range(50):
            n = int(rng.integers(1, 1001))
            words = ["".join(letters[int(rng.integers(0, 26))]
                             for _ in range(int(rng.integers(1, 13))))
                     for _ in range(n)]
            d = build_dawg(words)
            assert enumerate_words(d, max_len=12) == sorted(set(words))
            if n <= 100:
                assert len(d) == trie_merge_state_count(words)
        assert time.perf_counter() - start < 5.0


def test_near_matches_equals_brute_force():
    with criterion("near_matches == brute-force Levenshtein<=1 (100 words, 50 queries)"):
        start = time.perf_counter()
        rng = np.random.Generator(np.random.PCG64(13))
        letters = "abcdefg"
        words = sorted({"".join(letters[int(rng.integers(0, len(letters)))]
                                for _ in range(int(rng.integers(1, 10))))
                        for _ in range(100)})
        d = build_dawg(words)
        for _ in range(50):
            q = "".join(letters[int(rng.integers(0, len(letters)))]
                        for _ in range(int(rng.integers(1, 10))))
            got = [w for w, _ in near_matches(d, q)]
            expected = sorted(w for w in words if levenshtein(q, w) <= 1)
            assert got == expected
        assert time.perf_counter() - start < 1.0


def test_boxfile_codec_byte_identity():
    with criterion("box codec: parse/serialize byte-identity x1000; line diagnostics"):
        rng = np.random.Generator(np.random.PCG64(17))
        letters = string.ascii_lowercase + string.digits + ",.;!?"
        for _ in range(1000):
            boxes = []
            for _ in range(int(rng.integers(0, 40))):
                left = int(rng.integers(0, 900))
                bottom = int(rng.integers(0, 1200))
                boxes.append(GlyphBox(letters[int(rng.integers(0, len(letters)))],
                                      left, bottom,
                                      left + int(rng.integers(1, 60)),
                                      bottom + int(rng.integers(1, 60)),
                                      int(rng.integers(0, 4))))
            text = serialize_boxfile(BoxFile(tuple(boxes)))
            assert serialize_boxfile(parse_boxfile(text)) == text
        content = "a 1 2 3 4\nbroken\nb 9 9 9 9\n\nc 0 0 1 1 0\nd 5 5 1 9\n"
        with pytest.raises(BoxFileError) as err:
            parse_boxfile(content)
        assert [ln for ln, _ in err.value.diagnostics] == [2, 3, 6]


def test_otsu_equals_brute_force_argmax():
    with criterion("Otsu == exhaustive 256-candidate argmax (100 histograms)"):
        start = time.perf_counter()
        rng = np.random.Generator(np.random.PCG64(19))
        for _ in range(100):
            hist = rng.integers(0, 1000, size=256)
            hist[hist < 300] = 0        # sparse histograms too
            if np.count_nonzero(hist) < 2:
                hist[0], hist[255] = 1, 1
            assert otsu_threshold(hist) == otsu_brute_force(hist.tolist())
        assert time.perf_counter() - start < 1.0


def test_classifier_equals_exhaustive_scan():
    with criterion("classify_glyph == exhaustive nearest-prototype scan x1000"):
        rng = np.random.Generator(np.random.PCG64(23))
        from glyphkit.langset import LanguageSet
        from glyphkit.dawg import build_dawg as _bd
        for _ in range(1000):
            k = int(rng.integers(1, 12))
            protos = tuple(
                Prototype(label=string.ascii_lowercase[i % 26],
                          centroid=tuple(rng.random(FEATURE_DIM)),
                          member_count=1, spread=0.0)
                for i in range(k))
            labels = sorted({p.label for p in protos})
            uc = Unicharset(tuple(UnicharEntry(l, glyph_flags(l), 1) for l in labels))
            ls = LanguageSet(name="scan", prototypes=protos, unicharset=uc,
                             freq_table=tuple((l, 1.0 / len(labels)) for l in labels),
                             freq_dawg=_bd([]), word_dawg=_bd([]), user_words=(),
                             ambiguities=(), reject_threshold=1e9)
            fv = rng.random(FEATURE_DIM)
            glyph, dist = classify_glyph(ls, fv)
            idx, sq = nearest_prototype_scan([p.centroid for p in protos], fv)
            assert glyph == protos[idx].label            # decision matches exactly
            assert abs(dist - np.sqrt(sq)) <= 1e-12 * max(1.0, dist)


def test_evaluator_twelve_box_oracle_and_golden_report(tmp_path):
    with criterion("evaluator: 12-box hand enumeration exact; golden report stable"):
        truth = BoxFile(tuple(GlyphBox(l, i * 15, 0, i * 15 + 10, 20)
                              for i, l in enumerate("abcdefghijkl")))
        predicted = []
        for i in range(5):
            predicted.append((truth.boxes[i].rect, truth.boxes[i].label, False))
        for i in (5, 6):
            predicted.append((truth.boxes[i].rect, "z", False))
        predicted.append((Rect(105, 0, 130, 20), "h", False))
        predicted.append((truth.boxes[9].rect, None, False))
        predicted.append((truth.boxes[10].rect, "k", True))
        alignment = align_boxes([p[0] for p in predicted], truth)
        counts = count_outcomes(alignment, predicted, truth)
        assert counts == EvalCounts(c_t=5, c_m=2, c_s=2, c_r=3, total_gt=12)

        _, _, _, report = _run_pipeline(str(tmp_path))
        text = render_report([("user1", report)])
        golden = open(GOLDEN_REPORT, encoding="utf-8").read()
        assert text == golden


def test_full_pipeline_determinism(tmp_path):
    with criterion("determinism: two runs -> byte-identical sets, outputs, reports"):
        manifest_path = generate_corpus(os.path.join(str(tmp_path), "corpus"))
        runs = []
        for sub in ("one", "two"):
            langs_dir = os.path.join(str(tmp_path), sub)
            ls, ls_path, outputs, report = _train_and_score(manifest_path, langs_dir)
            bundle = {f: open(os.path.join(ls_path, f), "rb").read()
                      for f in os.listdir(ls_path)}
            runs.append((bundle, outputs, render_report([("user1", report)]),
                         render_tsv([("user1", report)])))
        a, b = runs
        assert a[0].keys() == b[0].keys()
        for fname in a[0]:
            assert a[0][fname] == b[0][fname], f"language set file {fname} differs"
        assert a[1] == b[1], "recognition outputs differ"
        assert a[2] == b[2], "report text differs"
        assert a[3] == b[3], "report TSV differs"


def test_backend_note():
    print(f"      (kernel backend: {glyphkit.kernels.BACKEND})")
