"""Command-line front door: makebox, train, recognize, eval, serve.

Exit codes: 0 success, 1 generic failure, 2 placeholder labels left in
training boxes, 3 language-set name collision without --force.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .boxfile import (PLACEHOLDER_LABEL, BoxFile, GlyphBox, load_boxfile,
                      save_boxfile)
from .config import DEFAULT_CONFIG, RunConfig
from .dawg import load_wordlist
from .evaluate import EvalReport, evaluate_pages, render_report, render_svg_chart, render_tsv
from .imageio import ensure_binarized, load_page
from .langset import LanguageSetError, load_language_set
from .manifest import load_manifest
from .recognize import emit_output, recognize_page
from .segment import segment_page
from .train import class_sample_counts, extract_training_features, train_language_set

log = logging.getLogger("glyphkit")


def _write_or_print(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_makebox(args, config: RunConfig) -> int:
    page = ensure_binarized(load_page(args.image))
    segmented = segment_page(page, config.segment)
    boxes = []
    for line in segmented.lines:
        for word in line.words:
            for cand in word.candidates:
                r = cand.bbox
                boxes.append(GlyphBox(PLACEHOLDER_LABEL, r.left, r.bottom,
                                      r.right, r.top, 0))
    save_boxfile(BoxFile(tuple(boxes)), args.out_box)
    print(f"{len(boxes)} candidate box(es) -> {args.out_box}")
    return 0


def cmd_train(args, config: RunConfig) -> int:
    manifest = load_manifest(args.manifest)
    entries = [e for e in manifest.select(args.user, "train") if e.box_path]
    if not entries:
        print(f"no train entries for user {args.user!r}", file=sys.stderr)
        return 1
    pairs = []
    placeholder_hits = []
    for e in entries:
        bf = load_boxfile(e.box_path)
        for lineno, box in enumerate(bf.boxes, start=1):
            if box.label == PLACEHOLDER_LABEL:
                placeholder_hits.append(f"{e.box_path}:{lineno}")
        pairs.append((ensure_binarized(load_page(e.image_path)), bf))
    if placeholder_hits:
        print("placeholder '*' labels remain; correct them in the labeler first:",
              file=sys.stderr)
        for hit in placeholder_hits[:20]:
            print(f"  {hit}", file=sys.stderr)
        if len(placeholder_hits) > 20:
            print(f"  ... and {len(placeholder_hits) - 20} more", file=sys.stderr)
        return 2
    words = load_wordlist(args.words) if args.words else None
    user_words = load_wordlist(args.user_words) if args.user_words else ()
    training_files = [e.image_path for e in entries] + [e.box_path for e in entries]
    try:
        ls = train_language_set(pairs, args.name, args.langs_dir, config=config,
                                words=words, user_words=user_words,
                                force=args.force, training_files=training_files)
    except LanguageSetError as exc:
        if "already exists" in str(exc):
            print(str(exc), file=sys.stderr)
            return 3
        raise
    samples = extract_training_features(pairs)
    counts = class_sample_counts(samples)
    print(f"trained language set {ls.name!r}: {len(samples)} samples, "
          f"{len(ls.unicharset)} glyphs, {len(ls.prototypes)} prototypes")
    print("per-class sample counts:")
    for glyph in sorted(counts):
        print(f"  {glyph} {counts[glyph]}")
    return 0


def cmd_recognize(args, config: RunConfig) -> int:
    ls = load_language_set(os.path.join(args.langs_dir, args.lang))
    page = load_page(args.image)
    rp = recognize_page(ls, page, use_dictionary=args.dict, config=config)
    _write_or_print(emit_output(rp, args.format), args.output)
    return 0


def cmd_eval(args, config: RunConfig) -> int:
    manifest = load_manifest(args.manifest)
    entries = manifest.select(args.user, "test")
    if not entries:
        print(f"no test entries for user {args.user!r}", file=sys.stderr)
        return 1
    ls = load_language_set(os.path.join(args.langs_dir, args.lang))
    triples = [(e.dataset, load_page(e.image_path), load_boxfile(e.box_path))
               for e in entries]
    report = evaluate_pages(ls, triples, config)
    text = render_report([(args.user, report)])
    _write_or_print(text, args.output)
    if args.tsv:
        _write_or_print(render_tsv([(args.user, report)]), args.tsv)
    if args.svg:
        _write_or_print(render_svg_chart(report), args.svg)
    return 0


def cmd_serve(args, config: RunConfig) -> int:
    from .server import serve
    serve(args.corpus_dir, port=args.port, host=args.host, config=config,
          ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glyphkit",
                                     description="per-user handwritten character OCR toolkit")
    parser.add_argument("--config", help="JSON run-config file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("makebox", help="segment a page into placeholder boxes")
    p.add_argument("image")
    p.add_argument("out_box")
    p.set_defaults(func=cmd_makebox)

    p = sub.add_parser("train", help="train a language set from labeled pages")
    p.add_argument("--manifest", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--name", required=True, help="language set name [a-z0-9_]{1,16}")
    p.add_argument("--langs-dir", default="langsets")
    p.add_argument("--words", help="wordlist file for the dictionaries")
    p.add_argument("--user-words", help="extra plain wordlist")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("recognize", help="recognize a page image")
    p.add_argument("image")
    p.add_argument("--lang", required=True)
    p.add_argument("--langs-dir", default="langsets")
    p.add_argument("--dict", action="store_true", help="enable dictionary correction")
    p.add_argument("--format", choices=("text", "boxes"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("eval", help="score recognition against ground truth")
    p.add_argument("--manifest", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--langs-dir", default="langsets")
    p.add_argument("-o", "--output")
    p.add_argument("--tsv")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="serve the box labeler UI and HTTP API")
    p.add_argument("corpus_dir")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig.load(args.config) if args.config else DEFAULT_CONFIG
    try:
        return args.func(args, config)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # CLI boundary: errors become messages + exit 1
        if args.verbose:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
