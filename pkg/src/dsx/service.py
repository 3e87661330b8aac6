"""HTTP service exposing search over an immutable corpus + index.

Endpoints:
  POST /search  {"old": str, "new": str, "k": int?, "max_results": int?,
                 "exhaustive": bool?}
      -> {"results": [{"id", "rank", "distance", "old", "new", "bindings"}],
          "stats": {"retrieved", "matched", "elapsed_ms"}}
  GET  /health  -> {"status": "ok", "corpus": <size>}

When a static directory is configured, GET serves its files (the web UI).
"""

from __future__ import annotations

import json
import logging
import mimetypes
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from dsx.engine import MODE_EXHAUSTIVE, MODE_INDEXED, SearchConfig, SearchResult, search
from dsx.errors import DsxError, QueryParseError
from dsx.grammar import Query
from dsx.index import VectorIndex
from dsx.ingestion import Corpus

log = logging.getLogger(__name__)


class SearchApp:
    """Request handling, independent of the HTTP plumbing."""

    def __init__(
        self,
        corpus: Corpus,
        index: VectorIndex | None,
        config: SearchConfig | None = None,
        static_dir: str | None = None,
    ):
        self.corpus = corpus
        self.index = index
        self.config = config or SearchConfig()
        self.static_dir = Path(static_dir).resolve() if static_dir else None

    def health(self) -> dict:
        return {"status": "ok", "corpus": len(self.corpus)}

    def search_payload(self, payload: dict) -> tuple[int, dict]:
        try:
            old = payload.get("old", "")
            new = payload.get("new", "")
            if not isinstance(old, str) or not isinstance(new, str):
                return 400, {"error": {"type": "BadRequest",
                                       "message": "old/new must be strings"}}
            query = Query.from_strings(old, new)
            config = SearchConfig(
                k=int(payload.get("k", self.config.k)),
                l=self.config.l,
                max_results=int(payload.get("max_results", self.config.max_results)),
                search_budget=self.config.search_budget,
                mode=(
                    MODE_EXHAUSTIVE
                    if payload.get("exhaustive", False)
                    else MODE_INDEXED
                ),
                depth=self.config.depth,
            )
            started = time.perf_counter()
            results = search(query, config, self.corpus, self.index)
            elapsed_ms = int((time.perf_counter() - started) * 1000)
        except QueryParseError as exc:
            return 400, {
                "error": {
                    "type": "QueryParseError",
                    "message": exc.message,
                    "side": exc.side,
                    "line": exc.line,
                    "column": exc.column,
                }
            }
        except (DsxError, ValueError) as exc:
            return 400, {"error": {"type": type(exc).__name__, "message": str(exc)}}
        retrieved = (
            len(self.corpus)
            if config.mode == MODE_EXHAUSTIVE
            else min(config.k, len(self.corpus))
        )
        return 200, {
            "results": [self._result_json(r) for r in results],
            "stats": {
                "retrieved": retrieved,
                "matched": len(results),
                "elapsed_ms": elapsed_ms,
            },
        }

    @staticmethod
    def _result_json(result: SearchResult) -> dict:
        return {
            "id": result.change.id,
            "rank": result.rank,
            "distance": result.distance,
            "old": list(result.change.old_lines),
            "new": list(result.change.new_lines),
            "bindings": result.bindings,
        }


class _Handler(BaseHTTPRequestHandler):
    app: SearchApp  # set by make_server

    def log_message(self, fmt, *args):  # route through logging, not stderr
        log.debug("%s " + fmt, self.address_string(), *args)

    def _send_json(self, status: int, body: dict) -> None:
        data = json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            self._send_json(200, self.app.health())
            return
        if self.app.static_dir is not None:
            self._serve_static()
            return
        self._send_json(404, {"error": {"type": "NotFound", "message": self.path}})

    def do_POST(self):
        if self.path != "/search":
            self._send_json(404, {"error": {"type": "NotFound", "message": self.path}})
            return
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        try:
            payload = json.loads(raw.decode("utf-8"))
            if not isinstance(payload, dict):
                raise ValueError("body must be a JSON object")
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_json(
                400, {"error": {"type": "BadRequest", "message": str(exc)}}
            )
            return
        status, body = self.app.search_payload(payload)
        self._send_json(status, body)

    def _serve_static(self):
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (self.app.static_dir / rel).resolve()
        if not str(target).startswith(str(self.app.static_dir)) or not target.is_file():
            self._send_json(404, {"error": {"type": "NotFound", "message": self.path}})
            return
        data = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)


def make_server(
    app: SearchApp, host: str = "127.0.0.1", port: int = 0
) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"app": app})
    return ThreadingHTTPServer((host, port), handler)
