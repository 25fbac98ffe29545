"""W3C WebDriver backend exercised against a stub driver endpoint.

The stub implements just enough of the wire protocol to verify the adapter's
request shapes, element-reference handling, and error mapping; real-browser
behavior is out of scope for the offline suite.
"""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from webstate.browser.webdriver import (ELEMENT_KEY, WebDriverError,
                                        WebDriverSession, _script_body)
from webstate.errors import ClickIntercepted


class StubDriver(BaseHTTPRequestHandler):
    state = {}

    def _reply(self, value, status=200):
        body = json.dumps({"value": value}).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        return json.loads(self.rfile.read(length) or b"{}")

    def log_message(self, *args):
        pass

    def do_POST(self):
        record = self.state.setdefault("requests", [])
        body = self._body()
        record.append((self.path, body))
        if self.path == "/session":
            return self._reply({"sessionId": "s1", "capabilities": {}})
        if self.path.endswith("/url"):
            self.state["url"] = body["url"]
            return self._reply(None)
        if self.path.endswith("/elements"):
            if body["value"] == "#missing":
                return self._reply([])
            return self._reply([{ELEMENT_KEY: "el-1"}, {ELEMENT_KEY: "el-2"}])
        if self.path.endswith("/element/el-blocked/click"):
            return self._reply({"error": "element click intercepted",
                                "message": "overlay in the way"}, status=400)
        if self.path.endswith("/click"):
            return self._reply(None)
        if self.path.endswith("/execute/sync"):
            script = body["script"]
            self.state.setdefault("scripts", []).append(body)
            if "window.__ws" in script and script.startswith("return !!"):
                return self._reply(True)
            if "data-websp-index" in script:
                return self._reply(7)
            return self._reply(None)
        if self.path.endswith("/actions"):
            return self._reply(None)
        return self._reply({"error": "unknown command",
                            "message": self.path}, status=404)

    def do_GET(self):
        if self.path.endswith("/url"):
            return self._reply(self.state.get("url", ""))
        if self.path.endswith("/window/handles"):
            return self._reply(["w1"])
        if self.path.endswith("/window"):
            return self._reply("w1")
        if self.path.endswith("/screenshot"):
            return self._reply("iVBORw0KGgo=")
        return self._reply({"error": "unknown command", "message": self.path},
                           status=404)

    def do_DELETE(self):
        self._reply(None)


@pytest.fixture
def stub_endpoint():
    StubDriver.state = {}
    server = ThreadingHTTPServer(("127.0.0.1", 0), StubDriver)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}"
    server.shutdown()


class TestProtocol:
    def test_session_created_with_profile_args(self, stub_endpoint, tmp_path):
        WebDriverSession(stub_endpoint, profile_dir=str(tmp_path / "prof"))
        path, body = StubDriver.state["requests"][0]
        assert path == "/session"
        args = body["capabilities"]["alwaysMatch"]["goog:chromeOptions"]["args"]
        assert any(a.startswith("--user-data-dir=") for a in args)
        assert "--headless=new" in args

    def test_navigate_and_current_url(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        session.navigate("https://example.org/a")
        assert session.current_url() == "https://example.org/a"

    def test_find_elements_unwraps_references(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        handles = session.query_css("button")
        assert handles == ["el-1", "el-2"]
        assert session.query_css("#missing") == []

    def test_click_intercepted_maps_to_engine_error(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        with pytest.raises(ClickIntercepted):
            session.native_click("el-blocked")
        session.native_click("el-1")  # plain click passes through

    def test_interaction_index_runs_asset_script(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        assert session.run_interaction_index() == 7
        scripts = [s["script"] for s in StubDriver.state["scripts"]]
        assert any("data-websp-index" in s for s in scripts)

    def test_pointer_sequence_uses_w3c_actions(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        session.pointer_sequence("el-1")
        actions = [b for p, b in StubDriver.state["requests"]
                   if p.endswith("/actions")]
        sequence = actions[0]["actions"][0]["actions"]
        assert [a["type"] for a in sequence] == ["pointerMove", "pointerDown",
                                                 "pointerUp"]
        assert sequence[0]["origin"] == {ELEMENT_KEY: "el-1"}

    def test_unknown_command_raises_webdriver_error(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        with pytest.raises(WebDriverError):
            session._cmd("GET", "/bogus")

    def test_screenshot_base64_decoded(self, stub_endpoint):
        session = WebDriverSession(stub_endpoint)
        assert session.screenshot().startswith(b"\x89PNG")


class TestScriptBody:
    def test_iife_assets_converted_to_applied_functions(self):
        asset = "(function () { return arguments[0]; })();"
        body = _script_body(asset)
        assert body.startswith("return ((function")
        assert body.endswith(").apply(null, arguments);")

    def test_bundled_assets_convert(self):
        from webstate.assets import load_script
        for name in ("interaction_index", "detect_elements", "element_info",
                     "scroll_target", "popup_scroll_target", "mutation_probe",
                     "changed_near"):
            body = _script_body(load_script(name))
            assert body.startswith("return (")
