"""In-process scripted HTTP stubs for the model and fill-mask protocols."""

from __future__ import annotations

import json
import socketserver
import threading
from http.server import BaseHTTPRequestHandler
from typing import Callable, Optional

# route handler: payload -> (status, body) or None to drop the connection
Route = Callable[[dict], Optional[tuple[int, dict]]]


class _Handler(BaseHTTPRequestHandler):
    routes: dict[str, Route] = {}

    def do_POST(self):  # noqa: N802 (http.server API)
        length = int(self.headers.get("Content-Length", 0))
        payload = json.loads(self.rfile.read(length) or b"{}")
        route = self.routes.get(self.path)
        if route is None:
            self._respond(404, {"error": f"no route {self.path}"})
            return
        result = route(payload)
        if result is None:
            # Simulate a transport failure mid-conversation.
            self.connection.close()
            return
        status, body = result
        self._respond(status, body)

    def _respond(self, status: int, body: dict) -> None:
        data = json.dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):  # silence request logging in test output
        pass


class StubServer:
    """A scripted localhost HTTP server on an ephemeral port."""

    def __init__(self, routes: dict[str, Route]):
        handler = type("Handler", (_Handler,), {"routes": routes})

        class Server(socketserver.ThreadingMixIn, socketserver.TCPServer):
            allow_reuse_address = True
            daemon_threads = True

        self._server = Server(("127.0.0.1", 0), handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def __enter__(self) -> "StubServer":
        self._thread.start()
        return self

    def __exit__(self, *exc) -> None:
        self._server.shutdown()
        self._server.server_close()


def fill_mask_stub(
    script: Optional[list[tuple[str, list[tuple[str, float]]]]] = None,
    default: Optional[list[tuple[str, float]]] = None,
) -> StubServer:
    """Fill-mask service; the first script row whose substring occurs in the
    request text wins, otherwise the default candidate list is returned."""
    script = script or []
    default = default if default is not None else []

    def route(payload: dict):
        if not all(k in payload for k in ("text", "mask_token", "top_k")):
            return 400, {"error": "missing field"}
        if payload["mask_token"] not in payload["text"]:
            return 400, {"error": "mask token not in text"}
        for needle, candidates in script:
            if needle in payload["text"]:
                chosen = candidates
                break
        else:
            chosen = default
        top = chosen[: payload["top_k"]]
        return 200, {"candidates": [{"token": t, "score": s} for t, s in top]}

    return StubServer({"/fill-mask": route})


def mrc_stub(answer_fn: Callable[[str, str], Optional[str]]) -> StubServer:
    def route(payload: dict):
        answer = answer_fn(payload.get("paragraph", ""), payload.get("question", ""))
        if answer is None:
            return None
        return 200, {"answer": answer}

    return StubServer({"/predict": route})


def sa_stub(
    table: dict[str, dict[str, float]],
    default: Optional[dict[str, float]] = None,
) -> StubServer:
    """Sentiment service scripted by exact input text -> probability dict."""
    default = default or {"positive": 0.6, "negative": 0.4}

    def route(payload: dict):
        probs = table.get(payload.get("text", ""), default)
        label = max(probs, key=lambda k: probs[k])
        return 200, {"label": label, "probs": probs}

    return StubServer({"/predict": route})


def ssm_stub(duplicate_pairs: set[tuple[str, str]]) -> StubServer:
    def route(payload: dict):
        pair = (payload.get("text_a", ""), payload.get("text_b", ""))
        return 200, {"duplicate": 1 if pair in duplicate_pairs else 0}

    return StubServer({"/predict": route})
