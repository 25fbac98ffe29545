"""HTTP server for the fixture corpus, for driving fixture sites with a real
browser: static pages at /<site_id>/<path> with fixtures.js injected so the
declarative data-fx-* behaviors run client-side (state in localStorage).
"""

import logging
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import data_path, standard_sites

logger = logging.getLogger(__name__)

_URL_ATTRS = re.compile(r'((?:href|src|data-fx-nav|data-fx-popup)=")(/[^"]*)(")')


def _load_site_page(site, path: str):
    file_path = site.routes.get(path)
    if file_path is None:
        return None
    with open(file_path, "r", encoding="utf-8") as fh:
        markup = fh.read()
    prefix = f"/{site.site_id}"

    def _prefix(match):
        url = match.group(2)
        if url.startswith("//") or url.startswith(prefix):
            return match.group(0)
        return f"{match.group(1)}{prefix}{url}{match.group(3)}"

    markup = _URL_ATTRS.sub(_prefix, markup)
    inject = (f'<script>window.__FX_SITE_ID="{site.site_id}";'
              f'window.__FX_PREFIX="{prefix}";</script>'
              '<script src="/__fixtures.js"></script>')
    if "</body>" in markup:
        markup = markup.replace("</body>", inject + "</body>")
    else:
        markup += inject
    return markup.encode("utf-8")


class FixtureHandler(BaseHTTPRequestHandler):
    sites = {}

    def do_GET(self):
        if self.path == "/healthz":
            return self._send(200, b"ok", "text/plain")
        if self.path == "/__fixtures.js":
            with open(data_path("fixtures.js"), "rb") as fh:
                return self._send(200, fh.read(), "application/javascript")
        match = re.match(r"^/([\w-]+)(/.*)?$", self.path)
        if match:
            site = self.sites.get(match.group(1))
            page_path = match.group(2) or "/"
            if site is not None:
                body = _load_site_page(site, page_path)
                if body is not None:
                    return self._send(200, body, "text/html; charset=utf-8")
        self._send(404, b"not found", "text/plain")

    def _send(self, status: int, body: bytes, content_type: str):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):
        logger.debug("fixture-server: " + fmt, *args)


def make_server(port: int = 8750) -> ThreadingHTTPServer:
    FixtureHandler.sites = {site.site_id: site for site in standard_sites()}
    return ThreadingHTTPServer(("127.0.0.1", port), FixtureHandler)


def serve_forever(port: int = 8750) -> None:
    server = make_server(port)
    print(f"serving fixture sites on http://127.0.0.1:{port}/<site-id>/ "
          "(Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
