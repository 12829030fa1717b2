"""Language Server Protocol service exposing the scanner as live diagnostics.

Speaks JSON-RPC 2.0 with Content-Length framing over a pair of binary
streams (stdio by default). Supports full-document sync and hover. Each
change triggers a full re-scan; the single-threaded message loop already
serializes changes per document, so no debounce timer is needed.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional
from urllib.parse import unquote, urlparse
from urllib.request import pathname2url

from .clientscan import Diagnostic, scan_file
from .depdb import DeprecationDb
from .sourcetree import ParseError

log = logging.getLogger("deprscan.lsp")

SEVERITY_WARNING = 2
SEVERITY_INFORMATION = 3


@dataclass
class DocumentState:
    uri: str
    version: int
    text: str
    last_diagnostics: list[Diagnostic] = field(default_factory=list)


def uri_to_path(uri: str) -> str:
    parsed = urlparse(uri)
    if parsed.scheme == "file":
        return unquote(parsed.path)
    return uri


def path_to_uri(path: str) -> str:
    return "file://" + pathname2url(str(path))


def diagnostic_to_lsp(d: Diagnostic) -> dict:
    return {
        "range": {
            "start": {"line": d.span.start_line - 1, "character": d.span.start_col},
            "end": {"line": d.span.end_line - 1, "character": d.span.end_col},
        },
        "severity": SEVERITY_INFORMATION if d.approximate else SEVERITY_WARNING,
        "source": "deprscan",
        "message": d.rendered_message,
    }


class LspServer:
    def __init__(self, db: DeprecationDb, reader=None, writer=None):
        self.db = db
        self.reader = reader if reader is not None else sys.stdin.buffer
        self.writer = writer if writer is not None else sys.stdout.buffer
        self.documents: dict[str, DocumentState] = {}
        self.shutdown_received = False
        self.running = True
        self.exit_code = 1

    # -- framing -----------------------------------------------------------

    def _read_message(self) -> Optional[dict]:
        content_length = None
        while True:
            line = self.reader.readline()
            if not line:
                return None
            line = line.strip()
            if not line:
                break
            if line.lower().startswith(b"content-length:"):
                content_length = int(line.split(b":", 1)[1])
        if content_length is None:
            return None
        body = self.reader.read(content_length)
        if len(body) < content_length:
            return None
        return json.loads(body.decode("utf-8"))

    def _send(self, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        header = f"Content-Length: {len(body)}\r\n\r\n".encode("ascii")
        self.writer.write(header + body)
        self.writer.flush()

    def _respond(self, msg_id, result) -> None:
        self._send({"jsonrpc": "2.0", "id": msg_id, "result": result})

    def _respond_error(self, msg_id, code: int, message: str) -> None:
        self._send({"jsonrpc": "2.0", "id": msg_id,
                    "error": {"code": code, "message": message}})

    def _notify(self, method: str, params: dict) -> None:
        self._send({"jsonrpc": "2.0", "method": method, "params": params})

    # -- scanning ----------------------------------------------------------

    def _publish(self, doc: DocumentState) -> None:
        path = uri_to_path(doc.uri)
        try:
            doc.last_diagnostics = scan_file(path, doc.text, self.db)
            items = [diagnostic_to_lsp(d) for d in doc.last_diagnostics]
        except ParseError as exc:
            doc.last_diagnostics = []
            items = [
                {
                    "range": {
                        "start": {"line": max(exc.line - 1, 0), "character": 0},
                        "end": {"line": max(exc.line - 1, 0), "character": 1},
                    },
                    "severity": SEVERITY_INFORMATION,
                    "source": "deprscan",
                    "message": f"syntax error: {exc.message}",
                }
            ]
        self._notify(
            "textDocument/publishDiagnostics",
            {"uri": doc.uri, "version": doc.version, "diagnostics": items},
        )

    def _hover_text(self, uri: str, line0: int, character: int):
        doc = self.documents.get(uri)
        if doc is None:
            return None
        line = line0 + 1
        enclosing = [d for d in doc.last_diagnostics if d.span.contains(line, character)]
        if not enclosing:
            return None
        # smallest enclosing span wins; exact matches beat approximate ones
        enclosing.sort(
            key=lambda d: (
                d.approximate,
                (d.span.end_line - d.span.start_line, d.span.end_col - d.span.start_col),
            )
        )
        return enclosing[0]

    # -- handlers ----------------------------------------------------------

    def _handle(self, msg: dict) -> None:
        method = msg.get("method")
        msg_id = msg.get("id")
        params = msg.get("params") or {}

        if method == "initialize":
            self._respond(msg_id, {
                "capabilities": {
                    "textDocumentSync": {"openClose": True, "change": 1},
                    "hoverProvider": True,
                },
                "serverInfo": {"name": "deprscan", "version": "0.1.0"},
            })
        elif method == "initialized":
            pass
        elif method == "shutdown":
            self.shutdown_received = True
            self._respond(msg_id, None)
        elif method == "exit":
            self.exit_code = 0 if self.shutdown_received else 1
            self.running = False
        elif method == "textDocument/didOpen":
            td = params["textDocument"]
            doc = DocumentState(td["uri"], td.get("version", 0), td["text"])
            self.documents[doc.uri] = doc
            self._publish(doc)
        elif method == "textDocument/didChange":
            td = params["textDocument"]
            uri = td["uri"]
            version = td.get("version", 0)
            doc = self.documents.get(uri)
            if doc is None:
                log.warning("didChange for unopened document %s", uri)
                return
            if version < doc.version:
                log.info("ignoring stale change for %s (v%d < v%d)", uri, version, doc.version)
                return
            changes = params.get("contentChanges") or []
            if changes:
                doc.text = changes[-1]["text"]  # full sync
            doc.version = version
            self._publish(doc)
        elif method == "textDocument/didClose":
            uri = params["textDocument"]["uri"]
            self.documents.pop(uri, None)
            self._notify("textDocument/publishDiagnostics", {"uri": uri, "diagnostics": []})
        elif method == "textDocument/hover":
            uri = params["textDocument"]["uri"]
            pos = params["position"]
            hit = self._hover_text(uri, pos["line"], pos["character"])
            if hit is None:
                self._respond(msg_id, None)
            else:
                self._respond(msg_id, {
                    "contents": {"kind": "plaintext", "value": hit.rendered_message},
                    "range": {
                        "start": {"line": hit.span.start_line - 1,
                                  "character": hit.span.start_col},
                        "end": {"line": hit.span.end_line - 1,
                                "character": hit.span.end_col},
                    },
                })
        elif msg_id is not None:
            self._respond_error(msg_id, -32601, f"method not found: {method}")

    def serve_forever(self) -> int:
        while self.running:
            try:
                msg = self._read_message()
            except (ValueError, OSError) as exc:
                log.error("transport error: %s", exc)
                return 1
            if msg is None:
                return self.exit_code if not self.running else 1
            try:
                self._handle(msg)
            except Exception as exc:
                log.exception("handler failure for %s", msg.get("method"))
                if msg.get("id") is not None:
                    self._respond_error(msg["id"], -32603, str(exc))
        return self.exit_code
