"""Corpus manifest: which pages belong to which user, split, and dataset.

Tab-separated text with a header line `user role dataset image box`;
'#' lines are comments.  Paths are resolved relative to the manifest file.
Dataset 1 holds isolated-character pages, dataset 2 free-flow pages.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    user: str
    role: str          # train | test
    dataset: int       # 1 | 2
    image_path: str
    box_path: str      # may be "" for train entries awaiting labeling


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple[ManifestEntry, ...]

    def select(self, user: str, role: str | None = None) -> list[ManifestEntry]:
        return [e for e in self.entries
                if e.user == user and (role is None or e.role == role)]

    def users(self) -> list[str]:
        seen = []
        for e in self.entries:
            if e.user not in seen:
                seen.append(e.user)
        return seen


HEADER = ("user", "role", "dataset", "image", "box")


def load_manifest(path: str) -> CorpusManifest:
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    header_seen = False
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if not header_seen:
            if tuple(f.strip() for f in fields) != HEADER:
                raise ManifestError(f"{path}:{lineno}: expected header "
                                    f"{' '.join(HEADER)!r}")
            header_seen = True
            continue
        if len(fields) != 5:
            raise ManifestError(f"{path}:{lineno}: expected 5 tab-separated fields")
        user, role, dataset_s, image, box = (f.strip() for f in fields)
        if role not in ("train", "test"):
            raise ManifestError(f"{path}:{lineno}: bad role {role!r}")
        if dataset_s not in ("1", "2"):
            raise ManifestError(f"{path}:{lineno}: bad dataset {dataset_s!r}")
        image_path = os.path.join(base, image)
        if not os.path.exists(image_path):
            raise ManifestError(f"{path}:{lineno}: image {image!r} not found")
        box_path = os.path.join(base, box) if box else ""
        if role == "test" and not box:
            raise ManifestError(f"{path}:{lineno}: test entry needs ground-truth boxes")
        if box and not os.path.exists(box_path):
            raise ManifestError(f"{path}:{lineno}: box file {box!r} not found")
        entries.append(ManifestEntry(user, role, int(dataset_s), image_path, box_path))
    if not header_seen:
        raise ManifestError(f"{path}: empty manifest")
    return CorpusManifest(tuple(entries))


def write_manifest(entries, path: str) -> None:
    base = os.path.dirname(os.path.abspath(path))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\t".join(HEADER) + "\n")
        for e in entries:
            fh.write("\t".join([e.user, e.role, str(e.dataset),
                                os.path.relpath(e.image_path, base),
                                os.path.relpath(e.box_path, base) if e.box_path else ""])
                     + "\n")
