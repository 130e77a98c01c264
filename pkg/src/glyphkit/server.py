"""Labeling server: JSON box API plus static UI assets.

Box edits use optimistic concurrency: every page carries a monotonically
increasing version; a PUT with a stale version gets 409 and no write.  Box
files are written atomically (temp file + rename) so a crash can never tear
the ground truth.  PNG output exists only as a browser convenience; corpus
files stay PBM/PGM.
"""

from __future__ import annotations

import json
import os
import re
import struct
import tempfile
import threading
import zlib
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from .boxfile import (PLACEHOLDER_LABEL, BoxFile, GlyphBox, load_boxfile,
                      serialize_boxfile)
from .config import RunConfig
from .imageio import ensure_binarized, load_page
from .segment import segment_page


def encode_png_gray(gray: np.ndarray) -> bytes:
    """Encode a uint8 grayscale raster as a PNG (8-bit, color type 0)."""
    gray = np.ascontiguousarray(gray, dtype=np.uint8)
    h, w = gray.shape

    def chunk(tag: bytes, payload: bytes) -> bytes:
        return (struct.pack(">I", len(payload)) + tag + payload
                + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF))

    ihdr = struct.pack(">IIBBBBB", w, h, 8, 0, 0, 0, 0)
    raw = b"".join(b"\x00" + gray[r].tobytes() for r in range(h))
    return (b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr)
            + chunk(b"IDAT", zlib.compress(raw, 6)) + chunk(b"IEND", b""))


class PageStore:
    """Corpus directory view with per-page versions and serialized writes."""

    def __init__(self, corpus_dir: str, config: RunConfig):
        self.corpus_dir = corpus_dir
        self.config = config
        self.lock = threading.Lock()
        self.versions: dict[str, int] = {}
        self.pages: dict[str, str] = {}
        for name in sorted(os.listdir(corpus_dir)):
            stem, ext = os.path.splitext(name)
            if ext in (".pbm", ".pgm"):
                self.pages[stem] = os.path.join(corpus_dir, name)
                self.versions[stem] = 1

    def box_path(self, page_id: str) -> str:
        return os.path.join(self.corpus_dir, page_id + ".box")

    def load_boxes(self, page_id: str) -> BoxFile:
        path = self.box_path(page_id)
        if not os.path.exists(path):
            return BoxFile()
        return load_boxfile(path)

    def write_boxes(self, page_id: str, bf: BoxFile) -> int:
        """Atomic replace; caller must hold self.lock."""
        path = self.box_path(page_id)
        fd, tmp = tempfile.mkstemp(dir=self.corpus_dir, prefix=".box-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(serialize_boxfile(bf))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.versions[page_id] += 1
        return self.versions[page_id]


def _boxes_to_json(bf: BoxFile) -> list[dict]:
    return [{"label": b.label, "left": b.left, "bottom": b.bottom,
             "right": b.right, "top": b.top, "page": b.page_index}
            for b in bf.boxes]


def _boxes_from_json(items) -> BoxFile:
    boxes = []
    for it in items:
        boxes.append(GlyphBox(str(it["label"]), int(it["left"]), int(it["bottom"]),
                              int(it["right"]), int(it["top"]),
                              int(it.get("page", 0))))
    return BoxFile(tuple(boxes))


_PAGE_ROUTE = re.compile(r"^/api/pages/([A-Za-z0-9_.-]+)/(image|boxes|autosegment)$")


class LabelHandler(BaseHTTPRequestHandler):
    store: PageStore = None  # injected by make_server
    ui_dir: str | None = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, code: int, body: bytes, content_type: str) -> None:
        self.send_response(code)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, obj) -> None:
        self._send(code, json.dumps(obj).encode("utf-8"), "application/json; charset=utf-8")

    def _error(self, code: int, message: str) -> None:
        self._send_json(code, {"error": message})

    def do_GET(self):
        if self.path == "/api/pages":
            out = []
            for page_id, path in self.store.pages.items():
                page = load_page(path)
                out.append({"id": page_id,
                            "image_url": f"/api/pages/{page_id}/image",
                            "box_url": f"/api/pages/{page_id}/boxes",
                            "width": page.width, "height": page.height,
                            "version": self.store.versions[page_id]})
            self._send_json(200, out)
            return
        m = _PAGE_ROUTE.match(self.path)
        if m:
            page_id, action = m.groups()
            if page_id not in self.store.pages:
                self._error(404, f"unknown page {page_id!r}")
                return
            if action == "image":
                page = load_page(self.store.pages[page_id])
                if page.gray is not None:
                    gray = page.gray
                else:
                    gray = np.where(page.ink, 0, 255).astype(np.uint8)
                self._send(200, encode_png_gray(gray), "image/png")
                return
            if action == "boxes":
                try:
                    bf = self.store.load_boxes(page_id)
                except ValueError as exc:
                    self._error(500, str(exc))
                    return
                self._send_json(200, {"version": self.store.versions[page_id],
                                      "boxes": _boxes_to_json(bf)})
                return
        self._serve_static()

    def _serve_static(self):
        if not self.ui_dir:
            self._error(404, "no UI assets configured")
            return
        path = self.path.split("?", 1)[0]
        if path == "/":
            path = "/index.html"
        fs_path = os.path.normpath(os.path.join(self.ui_dir, path.lstrip("/")))
        if not fs_path.startswith(os.path.abspath(self.ui_dir)):
            self._error(403, "forbidden")
            return
        if not os.path.isfile(fs_path):
            self._error(404, f"no such asset {path}")
            return
        ctype = {".html": "text/html; charset=utf-8",
                 ".js": "text/javascript; charset=utf-8",
                 ".css": "text/css; charset=utf-8",
                 ".map": "application/json"}.get(os.path.splitext(fs_path)[1],
                                                 "application/octet-stream")
        with open(fs_path, "rb") as fh:
            self._send(200, fh.read(), ctype)

    def _read_body(self):
        length = int(self.headers.get("Content-Length", "0"))
        return json.loads(self.rfile.read(length).decode("utf-8")) if length else {}

    def do_PUT(self):
        m = _PAGE_ROUTE.match(self.path)
        if not m or m.group(2) != "boxes":
            self._error(404, "unknown endpoint")
            return
        page_id = m.group(1)
        if page_id not in self.store.pages:
            self._error(404, f"unknown page {page_id!r}")
            return
        try:
            body = self._read_body()
            bf = _boxes_from_json(body.get("boxes", []))
            client_version = int(body.get("version", -1))
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            self._error(400, f"bad request: {exc}")
            return
        with self.store.lock:
            current = self.store.versions[page_id]
            if client_version != current:
                self._send_json(409, {"error": "stale version",
                                      "version": current})
                return
            try:
                new_version = self.store.write_boxes(page_id, bf)
            except OSError as exc:
                self._error(500, f"write failed: {exc}")
                return
        self._send_json(200, {"version": new_version})

    def do_POST(self):
        m = _PAGE_ROUTE.match(self.path)
        if not m or m.group(2) != "autosegment":
            self._error(404, "unknown endpoint")
            return
        page_id = m.group(1)
        if page_id not in self.store.pages:
            self._error(404, f"unknown page {page_id!r}")
            return
        page = ensure_binarized(load_page(self.store.pages[page_id]))
        segmented = segment_page(page, self.store.config.segment)
        boxes = []
        for line in segmented.lines:
            for word in line.words:
                for cand in word.candidates:
                    r = cand.bbox
                    boxes.append(GlyphBox(PLACEHOLDER_LABEL, r.left, r.bottom,
                                          r.right, r.top, 0))
        with self.store.lock:
            try:
                new_version = self.store.write_boxes(page_id, BoxFile(tuple(boxes)))
            except OSError as exc:
                self._error(500, f"write failed: {exc}")
                return
        self._send_json(200, {"version": new_version,
                              "boxes": _boxes_to_json(BoxFile(tuple(boxes)))})


def make_server(corpus_dir: str, port: int = 8077, host: str = "127.0.0.1",
                config: RunConfig = RunConfig(), ui_dir: str | None = None):
    store = PageStore(corpus_dir, config)
    if ui_dir is None:
        bundled = os.path.join(os.path.dirname(__file__), "ui")
        ui_dir = bundled if os.path.isdir(bundled) else None
    handler = type("BoundLabelHandler", (LabelHandler,),
                   {"store": store, "ui_dir": os.path.abspath(ui_dir) if ui_dir else None})
    return ThreadingHTTPServer((host, port), handler)


def serve(corpus_dir: str, port: int = 8077, host: str = "127.0.0.1",
          config: RunConfig = RunConfig(), ui_dir: str | None = None) -> None:
    httpd = make_server(corpus_dir, port, host, config, ui_dir)
    print(f"labeler serving {corpus_dir} on http://{host}:{httpd.server_address[1]}/",
          flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
