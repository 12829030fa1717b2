import io
import json
import subprocess
import sys

import pytest

from deprscan.depdb import DeprecationDb
from deprscan.lspserver import LspServer

CLIENT_TEXT = "import lib.a\nlib.a.old_fn()\n"
CLIENT_TEXT_FIXED = "import lib.a\n"
URI = "file:///client/file.py"


def frame(payload: dict) -> bytes:
    body = json.dumps(payload).encode()
    return f"Content-Length: {len(body)}\r\n\r\n".encode() + body


def parse_frames(data: bytes):
    messages = []
    buf = io.BytesIO(data)
    while True:
        headers = b""
        while not headers.endswith(b"\r\n\r\n"):
            chunk = buf.read(1)
            if not chunk:
                return messages
            headers += chunk
        length = int(headers.split(b":")[1].split(b"\r\n")[0])
        messages.append(json.loads(buf.read(length)))


def run_session(db, requests):
    reader = io.BytesIO(b"".join(frame(r) for r in requests))
    writer = io.BytesIO()
    server = LspServer(db, reader=reader, writer=writer)
    code = server.serve_forever()
    return code, parse_frames(writer.getvalue())


def req(msg_id, method, params=None):
    return {"jsonrpc": "2.0", "id": msg_id, "method": method, "params": params or {}}


def notif(method, params):
    return {"jsonrpc": "2.0", "method": method, "params": params}


def did_open(text, version=1):
    return notif("textDocument/didOpen", {
        "textDocument": {"uri": URI, "languageId": "python", "version": version, "text": text}
    })


def did_change(text, version):
    return notif("textDocument/didChange", {
        "textDocument": {"uri": URI, "version": version},
        "contentChanges": [{"text": text}],
    })


def published(messages):
    return [m for m in messages if m.get("method") == "textDocument/publishDiagnostics"]


class TestSession:
    def test_initialize_shutdown_clean_exit(self, minilib_db):
        code, messages = run_session(minilib_db, [
            req(1, "initialize"), notif("initialized", {}),
            req(2, "shutdown"), notif("exit", {}),
        ])
        assert code == 0
        init = next(m for m in messages if m.get("id") == 1)
        caps = init["result"]["capabilities"]
        assert caps["hoverProvider"] is True
        assert caps["textDocumentSync"]["change"] == 1

    def test_exit_without_shutdown_is_nonzero(self, minilib_db):
        code, _ = run_session(minilib_db, [req(1, "initialize"), notif("exit", {})])
        assert code == 1

    def test_open_publishes_one_diagnostic(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            req(2, "shutdown"), notif("exit", {}),
        ])
        pubs = published(messages)
        assert len(pubs) == 1
        diags = pubs[0]["params"]["diagnostics"]
        assert len(diags) == 1
        assert diags[0]["message"] == "deprecated: lib.a.old_fn — use new_fn"
        assert diags[0]["range"] == {
            "start": {"line": 1, "character": 0},
            "end": {"line": 1, "character": 12},
        }
        assert diags[0]["severity"] == 2

    def test_edit_clears_diagnostics(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            did_change(CLIENT_TEXT_FIXED, 2),
            req(2, "shutdown"), notif("exit", {}),
        ])
        pubs = published(messages)
        assert [len(p["params"]["diagnostics"]) for p in pubs] == [1, 0]

    def test_stale_version_ignored(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT, version=5),
            did_change(CLIENT_TEXT_FIXED, 2),  # stale: 2 < 5
            req(2, "shutdown"), notif("exit", {}),
        ])
        pubs = published(messages)
        assert len(pubs) == 1  # no republish for the stale edit

    def test_hover_inside_span(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            req(2, "textDocument/hover",
                {"textDocument": {"uri": URI}, "position": {"line": 1, "character": 3}}),
            req(3, "shutdown"), notif("exit", {}),
        ])
        hover = next(m for m in messages if m.get("id") == 2)
        assert hover["result"]["contents"]["value"] == "deprecated: lib.a.old_fn — use new_fn"

    def test_hover_outside_span(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            req(2, "textDocument/hover",
                {"textDocument": {"uri": URI}, "position": {"line": 0, "character": 0}}),
            req(3, "shutdown"), notif("exit", {}),
        ])
        hover = next(m for m in messages if m.get("id") == 2)
        assert hover["result"] is None

    def test_hover_prefers_exact_over_approximate(self, minilib_db):
        text = "from lib.b import *\nfrom lib.a import old_fn\nold_fn()\n"
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(text),
            req(2, "textDocument/hover",
                {"textDocument": {"uri": URI}, "position": {"line": 2, "character": 2}}),
            req(3, "shutdown"), notif("exit", {}),
        ])
        hover = next(m for m in messages if m.get("id") == 2)
        assert "[approximate match]" not in hover["result"]["contents"]["value"]

    def test_syntax_error_publishes_parse_diagnostic_only(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open("def broken(:\n"),
            req(2, "shutdown"), notif("exit", {}),
        ])
        diags = published(messages)[0]["params"]["diagnostics"]
        assert len(diags) == 1
        assert "syntax error" in diags[0]["message"]

    def test_close_clears_diagnostics(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            notif("textDocument/didClose", {"textDocument": {"uri": URI}}),
            req(2, "shutdown"), notif("exit", {}),
        ])
        pubs = published(messages)
        assert [len(p["params"]["diagnostics"]) for p in pubs] == [1, 0]

    def test_unknown_request_gets_error(self, minilib_db):
        _, messages = run_session(minilib_db, [
            req(1, "initialize"), req(2, "workspace/executeCommand"),
            req(3, "shutdown"), notif("exit", {}),
        ])
        err = next(m for m in messages if m.get("id") == 2)
        assert err["error"]["code"] == -32601

    def test_published_set_equals_scan(self, minilib_db):
        from deprscan.clientscan import scan_file

        _, messages = run_session(minilib_db, [
            req(1, "initialize"), did_open(CLIENT_TEXT),
            req(2, "shutdown"), notif("exit", {}),
        ])
        diags = published(messages)[0]["params"]["diagnostics"]
        expected = scan_file("/client/file.py", CLIENT_TEXT, minilib_db)
        assert [d["message"] for d in diags] == [d.rendered_message for d in expected]


class TestSubprocessServe:
    def test_stdio_golden_session(self, minilib_db_path):
        requests = [
            req(1, "initialize"), notif("initialized", {}),
            did_open(CLIENT_TEXT),
            did_change(CLIENT_TEXT_FIXED, 2),
            req(2, "textDocument/hover",
                {"textDocument": {"uri": URI}, "position": {"line": 1, "character": 3}}),
            req(3, "shutdown"), notif("exit", {}),
        ]
        proc = subprocess.run(
            [sys.executable, "-m", "deprscan.cli", "serve", "--db", str(minilib_db_path)],
            input=b"".join(frame(r) for r in requests),
            capture_output=True,
            timeout=30,
        )
        assert proc.returncode == 0, proc.stderr.decode()
        messages = parse_frames(proc.stdout)
        pubs = published(messages)
        assert [len(p["params"]["diagnostics"]) for p in pubs] == [1, 0]
