"""Trained per-user recognition data: the 8-file language set bundle.

A language set directory holds, in text form with LF endings:
  unicharset   glyph inventory with property flags and sample counts
  prototypes   per-glyph shape cluster centroids with spread
  freq-table   glyph priors
  freq-dawg    automaton over the frequent-words list
  word-dawg    automaton over the full wordlist
  user-words   plain wordlist (may be empty)
  ambiguities  tab-separated source/target substitution pairs (may be empty)
  meta         toolkit version, config snapshot, training inputs with hashes

Float values are quantized to 9 significant digits at assembly time, so a
persisted set reloads equal and re-saves byte-identically.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .dawg import Dawg, parse_dawg, serialize_dawg

FLAG_LOWER = 0x1
FLAG_DIGIT = 0x2
FLAG_PUNCT = 0x4

NAME_RE = re.compile(r"^[a-z0-9_]{1,16}$")

BUNDLE_FILES = ("unicharset", "prototypes", "freq-table", "freq-dawg",
                "word-dawg", "user-words", "ambiguities", "meta")


class LanguageSetError(ValueError):
    pass


def _q(v: float) -> float:
    """Quantize to the 9-significant-digit persisted precision."""
    return float("%.9g" % v)


@dataclass(frozen=True)
class Prototype:
    label: str
    centroid: tuple[float, ...]
    member_count: int
    spread: float

    def __post_init__(self):
        if self.member_count < 1:
            raise ValueError("prototype without members")
        if not np.isfinite(self.spread) or self.spread < 0:
            raise ValueError(f"bad spread {self.spread}")
        if not all(np.isfinite(self.centroid)):
            raise ValueError("non-finite centroid value")


@dataclass(frozen=True)
class UnicharEntry:
    glyph: str
    flags: int
    count: int


@dataclass(frozen=True)
class Unicharset:
    entries: tuple[UnicharEntry, ...]

    def glyphs(self) -> list[str]:
        return [e.glyph for e in self.entries]

    def __len__(self):
        return len(self.entries)


def glyph_flags(glyph: str) -> int:
    if glyph.isdigit():
        return FLAG_DIGIT
    if glyph.islower():
        return FLAG_LOWER
    return FLAG_PUNCT


@dataclass(frozen=True)
class LanguageSet:
    name: str
    prototypes: tuple[Prototype, ...]
    unicharset: Unicharset
    freq_table: tuple[tuple[str, float], ...]
    freq_dawg: Dawg
    word_dawg: Dawg
    user_words: tuple[str, ...]
    ambiguities: tuple[tuple[str, str], ...]
    reject_threshold: float
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not NAME_RE.match(self.name):
            raise LanguageSetError(f"bad language set name {self.name!r}")
        if not self.prototypes or not len(self.unicharset):
            raise LanguageSetError("language set needs prototypes and a unicharset")
        if not (np.isfinite(self.reject_threshold) and self.reject_threshold > 0):
            raise LanguageSetError(f"bad reject threshold {self.reject_threshold})")
        glyphs = set(self.unicharset.glyphs())
        proto_labels = {p.label for p in self.prototypes}
        missing = proto_labels - glyphs
        if missing:
            raise LanguageSetError(f"prototype labels missing from unicharset: {sorted(missing)}")
        orphans = glyphs - proto_labels
        if orphans:
            raise LanguageSetError(f"unicharset glyphs without prototypes: {sorted(orphans)}")

    def proto_matrix(self) -> np.ndarray:
        return np.array([p.centroid for p in self.prototypes], dtype=np.float64)

    def priors(self) -> dict[str, float]:
        return dict(self.freq_table)


def save_language_set(ls: LanguageSet, root_dir: str, force: bool = False) -> str:
    """Persist the 8-file bundle under <root_dir>/<name>/; returns the path."""
    path = os.path.join(root_dir, ls.name)
    if os.path.exists(path) and not force:
        raise LanguageSetError(f"language set {ls.name!r} already exists "
                               f"at {path} (use force to overwrite)")
    os.makedirs(path, exist_ok=True)

    def write(fname: str, text: str) -> None:
        with open(os.path.join(path, fname), "w", encoding="utf-8", newline="") as fh:
            fh.write(text)

    uc_lines = [str(len(ls.unicharset))]
    uc_lines += [f"{e.glyph} {e.flags:x} {e.count}" for e in ls.unicharset.entries]
    write("unicharset", "\n".join(uc_lines) + "\n")

    proto_lines = []
    for p in ls.prototypes:
        vals = " ".join("%.9g" % v for v in p.centroid)
        proto_lines.append(f"{p.label} {p.member_count} {'%.9g' % p.spread} {vals}")
    write("prototypes", "\n".join(proto_lines) + "\n")

    write("freq-table", "".join(f"{g} {'%.9g' % p}\n" for g, p in ls.freq_table))
    write("freq-dawg", serialize_dawg(ls.freq_dawg))
    write("word-dawg", serialize_dawg(ls.word_dawg))
    write("user-words", "".join(w + "\n" for w in ls.user_words))
    write("ambiguities", "".join(f"{s}\t{t}\n" for s, t in ls.ambiguities))

    meta = dict(ls.meta)
    meta.setdefault("version", __version__)
    meta["name"] = ls.name
    meta["reject_threshold"] = ls.reject_threshold
    write("meta", json.dumps(meta, sort_keys=True, indent=2) + "\n")
    return path


def load_language_set(path: str) -> LanguageSet:
    """Load a persisted bundle; inverse of save_language_set."""

    def read(fname: str) -> str:
        fpath = os.path.join(path, fname)
        if not os.path.exists(fpath):
            raise LanguageSetError(f"missing language set file {fpath}")
        with open(fpath, "r", encoding="utf-8") as fh:
            return fh.read()

    uc_text = read("unicharset").split("\n")
    try:
        n_entries = int(uc_text[0])
    except (ValueError, IndexError):
        raise LanguageSetError("bad unicharset header")
    entries = []
    for line in uc_text[1:]:
        if not line:
            continue
        glyph, flags_hex, count = line.split(" ")
        entries.append(UnicharEntry(glyph, int(flags_hex, 16), int(count)))
    if len(entries) != n_entries:
        raise LanguageSetError(f"unicharset announces {n_entries} entries, has {len(entries)}")
    unicharset = Unicharset(tuple(entries))

    protos = []
    for line in read("prototypes").split("\n"):
        if not line:
            continue
        parts = line.split(" ")
        protos.append(Prototype(label=parts[0], member_count=int(parts[1]),
                                spread=float(parts[2]),
                                centroid=tuple(float(v) for v in parts[3:])))

    freq = []
    for line in read("freq-table").split("\n"):
        if not line:
            continue
        glyph, prior = line.split(" ")
        freq.append((glyph, float(prior)))

    freq_dawg = parse_dawg(read("freq-dawg"))
    word_dawg = parse_dawg(read("word-dawg"))
    user_words = tuple(w for w in read("user-words").split("\n") if w)
    ambiguities = []
    for line in read("ambiguities").split("\n"):
        if not line:
            continue
        if "\t" not in line:
            raise LanguageSetError(f"ambiguity line without tab: {line!r}")
        src, tgt = line.split("\t", 1)
        ambiguities.append((src, tgt))
    meta = json.loads(read("meta"))

    name = meta.get("name", os.path.basename(os.path.normpath(path)))
    return LanguageSet(name=name, prototypes=tuple(protos), unicharset=unicharset,
                       freq_table=tuple(freq), freq_dawg=freq_dawg, word_dawg=word_dawg,
                       user_words=user_words, ambiguities=tuple(ambiguities),
                       reject_threshold=float(meta["reject_threshold"]), meta=meta)


def quantized(ls: LanguageSet) -> LanguageSet:
    """Language set with floats rounded to the persisted 9-digit precision."""
    protos = tuple(Prototype(p.label, tuple(_q(v) for v in p.centroid),
                             p.member_count, _q(p.spread)) for p in ls.prototypes)
    freq = tuple((g, _q(p)) for g, p in ls.freq_table)
    return LanguageSet(name=ls.name, prototypes=protos, unicharset=ls.unicharset,
                       freq_table=freq, freq_dawg=ls.freq_dawg, word_dawg=ls.word_dawg,
                       user_words=ls.user_words, ambiguities=ls.ambiguities,
                       reject_threshold=_q(ls.reject_threshold), meta=ls.meta)
