"""Read-only JSON API over a catalog snapshot.

Every response is a deterministic function of (catalog, request). The
server is the standard-library threading HTTP server: requests never
mutate state, so unrestricted concurrent reads over the immutable
catalog are safe.

Endpoints:
    GET /api/tree?level=K
    GET /api/themes/{level}/{index}?offset=&limit=
    GET /api/papers/{key}
    GET /api/search?q=&theme=L:I&limit=
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlsplit

from .catalog import Catalog
from .errors import UnknownThemeError
from .hierarchy import ThemeId

logger = logging.getLogger(__name__)

DEFAULT_ADDR = "127.0.0.1:8080"

_BAD = object()  # sentinel for unparseable integer query params


@dataclass
class ApiConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    catalog_path: str | None = None
    result_cap: int = 100
    cors_origin: str = "*"
    log_requests: bool = False

    def __post_init__(self):
        if not 0 <= self.port <= 65535:
            raise ValueError(f"invalid port {self.port}")
        if self.result_cap < 1:
            raise ValueError("result cap must be >= 1")


def parse_addr(addr: str) -> tuple[str, int]:
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"address must be HOST:PORT, got {addr!r}")
    return host, int(port)


def json_bytes(payload) -> bytes:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "eqrank"

    def log_message(self, fmt, *args):
        if self.server.config.log_requests:
            logger.info("%s %s", self.address_string(), fmt % args)

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        try:
            url = urlsplit(self.path)
            query = parse_qs(url.query)
            catalog = self.server.catalog
            if catalog is None:
                self._send(503, {"error": "no catalog loaded"})
                return
            path = url.path.rstrip("/") or "/"
            if path == "/api/tree":
                self._tree(catalog, query)
            elif path.startswith("/api/themes/"):
                self._theme(catalog, path[len("/api/themes/") :], query)
            elif path.startswith("/api/papers/"):
                self._paper(catalog, unquote(path[len("/api/papers/") :]))
            elif path == "/api/search":
                self._search(catalog, query)
            else:
                self._send(404, {"error": f"unknown path {url.path}"})
        except BrokenPipeError:
            pass
        except Exception as exc:  # noqa: BLE001 - single boundary for 500s
            logger.exception("request failed: %s", self.path)
            self._send(500, {"error": str(exc)})

    # -- endpoints -------------------------------------------------------

    def _tree(self, catalog: Catalog, query):
        level = self._int_param(query, "level")
        if level is _BAD:
            self._send(400, {"error": "level must be an integer"})
            return
        if level is None:
            payload = [
                {"level": lvl, "themes": catalog.summaries_at(lvl)}
                for lvl in range(1, catalog.num_levels + 1)
            ]
            self._send(200, payload)
            return
        if not 1 <= level <= catalog.num_levels:
            self._send(400, {"error": f"level out of range 1..{catalog.num_levels}"})
            return
        self._send(200, catalog.summaries_at(level))

    def _theme(self, catalog: Catalog, rest: str, query):
        parts = rest.split("/")
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            self._send(404, {"error": "theme path must be /api/themes/{level}/{index}"})
            return
        level, index = int(parts[0]), int(parts[1])
        offset = self._int_param(query, "offset", 0)
        limit = self._int_param(query, "limit", 50)
        rank_limit = self._int_param(query, "rank_limit", 20)
        if _BAD in (offset, limit, rank_limit) or offset < 0 or limit < 1 or rank_limit < 1:
            self._send(400, {"error": "offset must be >= 0, limits must be >= 1"})
            return
        limit = min(limit, self.server.config.result_cap)
        rank_limit = min(rank_limit, self.server.config.result_cap)
        try:
            payload = {
                "summary": catalog.summary(level, index),
                "authorities": catalog.theme_authorities(level, index, rank_limit),
                "hubs": catalog.theme_hubs(level, index, rank_limit),
                "members": catalog.members_page(level, index, offset, limit),
            }
        except UnknownThemeError as exc:
            self._send(404, {"error": str(exc)})
            return
        self._send(200, payload)

    def _paper(self, catalog: Catalog, key: str):
        payload = catalog.paper_payload(key)
        if payload is None:
            self._send(404, {"error": f"unknown paper {key!r}"})
            return
        self._send(200, payload)

    def _search(self, catalog: Catalog, query):
        q = query.get("q", [""])[0]
        limit = self._int_param(query, "limit", self.server.config.result_cap)
        if limit is _BAD or limit < 1:
            self._send(400, {"error": "limit must be >= 1"})
            return
        limit = min(limit, self.server.config.result_cap)
        theme = None
        raw_theme = query.get("theme", [None])[0]
        if raw_theme is not None:
            try:
                level_s, _, index_s = raw_theme.partition(":")
                theme = ThemeId(int(level_s), int(index_s))
            except ValueError:
                self._send(400, {"error": "theme filter must be LEVEL:INDEX"})
                return
        try:
            results = catalog.search_payload(q, theme=theme, limit=limit)
        except UnknownThemeError as exc:
            self._send(404, {"error": str(exc)})
            return
        self._send(200, results)

    # -- plumbing ---------------------------------------------------------

    def _int_param(self, query, name, default=None):
        raw = query.get(name, [None])[0]
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            return _BAD

    def _cors(self):
        self.send_header("Access-Control-Allow-Origin", self.server.config.cors_origin)
        self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _send(self, status: int, payload):
        body = json_bytes(payload)
        self.send_response(status)
        self._cors()
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


class CatalogServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, catalog: Catalog | None, config: ApiConfig):
        self.catalog = catalog
        self.config = config
        super().__init__((config.host, config.port), _Handler)


def create_server(catalog: Catalog | None, config: ApiConfig | None = None) -> CatalogServer:
    return CatalogServer(catalog, config or ApiConfig())


def serve_forever(catalog: Catalog, config: ApiConfig) -> None:
    server = create_server(catalog, config)
    host, port = server.server_address[:2]
    print(f"serving catalog on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
