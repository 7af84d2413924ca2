"""Small read-only HTTP server for a gradient log and the explorer assets.

Routes: GET /api/log returns the serialized log as application/json,
GET /api/health returns {"status":"ok"}, anything else is looked up in
the static directory (/ maps to index.html) or answered 404.
"""

from __future__ import annotations

import mimetypes
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

_HEALTH = b'{"status":"ok"}'


class LogRequestHandler(BaseHTTPRequestHandler):
    # set by make_server on the subclass
    log_bytes: bytes = b"{}"
    static_dir: Path | None = None
    quiet: bool = True

    def do_GET(self):  # noqa: N802 (http.server API)
        path = self.path.split("?", 1)[0]
        if path == "/api/log":
            self._send(200, "application/json", self.log_bytes)
        elif path == "/api/health":
            self._send(200, "application/json", _HEALTH)
        else:
            self._send_static(path)

    def _send_static(self, path: str) -> None:
        if self.static_dir is None:
            self._send(404, "text/plain", b"not found\n")
            return
        name = posixpath.normpath(path.lstrip("/")) or "."
        if name == ".":
            name = "index.html"
        target = (self.static_dir / name).resolve()
        root = self.static_dir.resolve()
        if root not in target.parents and target != root:
            self._send(404, "text/plain", b"not found\n")
            return
        if not target.is_file():
            self._send(404, "text/plain", b"not found\n")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, ctype, target.read_bytes())

    def _send(self, status: int, ctype: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):
        if not self.quiet:
            super().log_message(fmt, *args)


def make_server(log_bytes: bytes, port: int, static_dir: str | None = None,
                host: str = "127.0.0.1", quiet: bool = True) -> ThreadingHTTPServer:
    """Bind and return the server; raises OSError if the port is busy."""
    handler = type("BoundHandler", (LogRequestHandler,), {
        "log_bytes": log_bytes,
        "static_dir": Path(static_dir) if static_dir else None,
        "quiet": quiet,
    })
    return ThreadingHTTPServer((host, port), handler)


def serve_forever(server: ThreadingHTTPServer) -> None:
    """Run until interrupted; shuts down cleanly on Ctrl-C."""
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
