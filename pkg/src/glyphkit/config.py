"""Run configuration: every tunable threshold in one record.

The segmentation heuristics have no canonical parameter values, so they are
all surfaced here and snapshotted into each trained language set's meta file.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class SegmentConfig:
    min_ink: int = 4                 # components below this pixel count are noise
    merge_overlap: float = 0.5       # min horizontal overlap / narrower width
    merge_gap_factor: float = 0.5    # max vertical gap / median component height
    line_band_factor: float = 0.5    # line band expansion / median candidate height
    word_gap_factor: float = 0.5     # word split gap / median candidate height

    def __post_init__(self):
        if self.min_ink < 1:
            raise ValueError("min_ink must be >= 1")
        for name in ("merge_overlap", "merge_gap_factor", "line_band_factor",
                     "word_gap_factor"):
            v = getattr(self, name)
            if not 0.0 <= v <= 10.0:
                raise ValueError(f"{name}={v} outside 0..10")


@dataclass(frozen=True)
class RunConfig:
    segment: SegmentConfig = SegmentConfig()
    k_max: int = 4                       # prototype clusters per glyph class
    reject_multiplier: float = 1.5       # scales the 99th-percentile distance
    word_reject_fraction: float = 0.5    # word rejected when > this share of REJECTs
    use_dictionary: bool = False         # linguistic analysis off by default
    freq_word_fraction: float = 0.1      # share of wordlist routed to freq-dawg

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.reject_multiplier <= 0:
            raise ValueError("reject_multiplier must be > 0")
        if not 0.0 <= self.word_reject_fraction <= 1.0:
            raise ValueError("word_reject_fraction outside 0..1")
        if not 0.0 < self.freq_word_fraction <= 1.0:
            raise ValueError("freq_word_fraction outside (0, 1]")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["segment"] = dataclasses.asdict(self.segment)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        seg = d.pop("segment", {})
        return cls(segment=SegmentConfig(**seg), **d)

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


DEFAULT_CONFIG = RunConfig()
