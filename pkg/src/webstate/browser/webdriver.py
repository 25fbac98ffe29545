"""BrowserSession backend speaking the W3C WebDriver protocol over HTTP.

Talks directly to a driver endpoint (chromedriver/geckodriver); element
queries that must cross shadow roots, the interaction index, detection, and
the interaction-signal probe all run as injected page scripts from the
versioned assets. Requires a real browser, so none of this runs in the
offline suite beyond protocol-level tests against a stub endpoint.
"""

import base64
import time
from typing import List, Optional, Tuple

import requests

from ..assets import load_script
from ..errors import ClickIntercepted, IndexUnavailable
from . import DetectedElement, ElementInfo, TabInfo

ELEMENT_KEY = "element-6066-11e4-a52e-4f735466cecf"


class WebDriverError(Exception):
    def __init__(self, error: str, message: str):
        self.error = error
        super().__init__(f"{error}: {message}")


def _script_body(asset_code: str) -> str:
    code = asset_code.strip()
    if code.endswith("})();"):
        code = code[:-3]  # drop the self-invocation; keep the function
        return f"return ({code}).apply(null, arguments);"
    return code


class WebDriverSession:
    """One remote browser session (one profile, one control thread)."""

    def __init__(self, endpoint: str, profile_dir: Optional[str] = None,
                 headless: bool = True, color_scheme: str = "light",
                 browser: str = "chrome", http_timeout: float = 60.0,
                 extra_args: Optional[List[str]] = None):
        self.endpoint = endpoint.rstrip("/")
        self.http = requests.Session()
        self.http_timeout = http_timeout
        args = list(extra_args or [])
        if profile_dir:
            args.append(f"--user-data-dir={profile_dir}")
        if headless:
            args.append("--headless=new")
        if color_scheme == "light":
            # forcing the light scheme, matching the benchmark run setup
            args.append("--disable-features=WebContentsForceDark")
            args.append("--force-color-profile=srgb")
        capabilities = {
            "capabilities": {
                "alwaysMatch": {
                    "browserName": browser,
                    "goog:chromeOptions": {"args": args},
                }
            }
        }
        value = self._request("POST", "/session", capabilities)
        self.session_id = value["sessionId"]
        self._base = f"/session/{self.session_id}"

    # -- low-level protocol ---------------------------------------------------

    def _request(self, method: str, path: str, body=None):
        url = self.endpoint + path
        response = self.http.request(method, url, json=body,
                                     timeout=self.http_timeout)
        payload = response.json()
        value = payload.get("value")
        if response.status_code >= 400 or (
                isinstance(value, dict) and "error" in value):
            error = value.get("error", "unknown") if isinstance(value, dict) \
                else "unknown"
            message = value.get("message", "") if isinstance(value, dict) else ""
            if error == "element click intercepted":
                raise ClickIntercepted(message)
            raise WebDriverError(error, message)
        return value

    def _cmd(self, method: str, path: str, body=None):
        return self._request(method, self._base + path, body)

    def execute(self, script: str, args: Optional[list] = None):
        # element arguments must already be {ELEMENT_KEY: id} references
        return self._cmd("POST", "/execute/sync",
                         {"script": script, "args": args or []})

    def _execute_asset(self, name: str, args: Optional[list] = None):
        self._ensure_lib()
        return self.execute(_script_body(load_script(name)), args)

    def _ensure_lib(self) -> None:
        if not self.execute("return !!window.__ws;"):
            self.execute(load_script("lib"))

    # -- navigation & windows ------------------------------------------------

    def navigate(self, url: str) -> None:
        self._cmd("POST", "/url", {"url": url})

    def current_url(self) -> str:
        return self._cmd("GET", "/url")

    def go_back(self) -> None:
        self._cmd("POST", "/back", {})

    def window_handles(self) -> List[str]:
        return list(self._cmd("GET", "/window/handles"))

    def current_window(self) -> str:
        try:
            return self._cmd("GET", "/window")
        except WebDriverError:
            return ""

    def switch_window(self, handle: str) -> None:
        self._cmd("POST", "/window", {"handle": handle})

    def window_origin(self, handle: str) -> str:
        current = self.current_window()
        if handle != current:
            self.switch_window(handle)
        origin = self.execute("return window.location.origin;")
        if handle != current and current:
            self.switch_window(current)
        return origin

    def tabs(self) -> List[TabInfo]:
        current = self.current_window()
        tabs = []
        for handle in self.window_handles():
            self.switch_window(handle)
            tabs.append(TabInfo(
                handle=handle,
                title=self._cmd("GET", "/title"),
                url=self.current_url(),
                active=handle == current,
            ))
        if current:
            self.switch_window(current)
        return tabs

    def quit(self) -> None:
        self._request("DELETE", self._base)

    # -- frames ---------------------------------------------------------------

    def switch_to_top(self) -> None:
        self._cmd("POST", "/frame", {"id": None})

    def switch_into_frame(self, frame_selector: Optional[str], index: int) -> bool:
        try:
            if frame_selector:
                frames = self.query_css(frame_selector)
                if not frames:
                    return False
                self._cmd("POST", "/frame", {"id": {ELEMENT_KEY: frames[0]}})
            else:
                self._cmd("POST", "/frame", {"id": index})
        except WebDriverError:
            return False
        return True

    def current_origin(self) -> str:
        return self.execute("return window.location.origin;")

    # -- queries ---------------------------------------------------------------

    def _find(self, using: str, value: str) -> List[str]:
        try:
            found = self._cmd("POST", "/elements", {"using": using, "value": value})
        except WebDriverError as exc:
            if exc.error in ("no such element", "invalid selector"):
                return []
            raise
        return [item[ELEMENT_KEY] for item in found]

    def query_css(self, selector: str, shadow_aware: bool = False) -> List[str]:
        if not shadow_aware:
            return self._find("css selector", selector)
        self._ensure_lib()
        result = self.execute(
            "var sel = arguments[0]; var out = [];"
            "window.__ws.walkComposed(document.documentElement, function (el) {"
            "  if (el.nodeType === 1 && el.matches && el.matches(sel))"
            "    out.push(el);"
            "});"
            "return out;", [selector])
        return [item[ELEMENT_KEY] for item in result]

    def query_xpath(self, xpath: str) -> List[str]:
        return self._find("xpath", xpath)

    def find_by_text(self, kind: str, text: str) -> List[str]:
        self._ensure_lib()
        result = self.execute(
            "var kind = arguments[0], want = arguments[1]; var out = [];"
            "window.__ws.walkComposed(document.documentElement, function (el) {"
            "  if (el.nodeType !== 1 || !window.__ws.isInteractive(el)) return;"
            "  var got = kind === 'label' ? window.__ws.labelText(el)"
            "    : window.__ws.siblingText(el);"
            "  if (got === want) out.push(el);"
            "});"
            "return out;", [kind, text])
        return [item[ELEMENT_KEY] for item in result]

    def shadow_children_query(self, handle: str, selector: str) -> List[str]:
        result = self.execute(
            "var host = arguments[0];"
            "if (!host.shadowRoot) return [];"
            "return Array.prototype.slice.call("
            "  host.shadowRoot.querySelectorAll(arguments[1]));",
            [{ELEMENT_KEY: handle}, selector])
        return [item[ELEMENT_KEY] for item in result]

    def has_shadow_root(self, handle: str) -> bool:
        return bool(self.execute("return !!arguments[0].shadowRoot;",
                                 [{ELEMENT_KEY: handle}]))

    def element_info(self, handle: str) -> ElementInfo:
        info = self._execute_asset("element_info", [{ELEMENT_KEY: handle}])
        return ElementInfo(
            tag=info["tag"], attrs=info["attrs"], text=info["text"],
            label_text=info["label_text"], sibling_text=info["sibling_text"],
            parent_text=info["parent_text"], value=info["value"],
            checked=info["checked"], css_path=info["css_path"],
            xpath=info["xpath"], outer_html=info["outer_html"],
            rect=tuple(info["rect"]) if info["rect"] else None,
        )

    def document_order(self, handles: List[str]) -> List[str]:
        if len(handles) <= 1:
            return list(handles)
        self._ensure_lib()
        result = self.execute(
            "var input = arguments[0]; var out = [];"
            "window.__ws.walkComposed(document.documentElement, function (el) {"
            "  if (input.indexOf(el) >= 0) out.push(el);"
            "});"
            "return out;", [[{ELEMENT_KEY: h} for h in handles]])
        ordered = [item[ELEMENT_KEY] for item in result]
        return ordered or list(handles)

    def run_interaction_index(self) -> int:
        try:
            return int(self._execute_asset("interaction_index"))
        except WebDriverError as exc:
            raise IndexUnavailable(str(exc)) from exc

    def detect_interactives(self) -> List[DetectedElement]:
        rows = self._execute_asset("detect_elements")
        out = []
        for row in rows:
            matches = self._find("css selector",
                                 f'[data-ws-det="{row["det"]}"]')
            if not matches:
                continue
            out.append(DetectedElement(
                handle=matches[0], tag=row["tag"], text=row["text"],
                rect=tuple(row["rect"]), in_popup=row["in_popup"]))
        return out

    # -- interaction -------------------------------------------------------------

    def native_click(self, handle: str) -> None:
        self._cmd("POST", f"/element/{handle}/click", {})

    def script_click(self, handle: str) -> None:
        self.execute("arguments[0].click();", [{ELEMENT_KEY: handle}])

    def pointer_sequence(self, handle: str) -> None:
        actions = {
            "actions": [{
                "type": "pointer",
                "id": "mouse",
                "parameters": {"pointerType": "mouse"},
                "actions": [
                    {"type": "pointerMove", "duration": 0,
                     "origin": {ELEMENT_KEY: handle}, "x": 0, "y": 0},
                    {"type": "pointerDown", "button": 0},
                    {"type": "pointerUp", "button": 0},
                ],
            }]
        }
        self._cmd("POST", "/actions", actions)

    def focus(self, handle: str) -> None:
        self.execute("arguments[0].focus();", [{ELEMENT_KEY: handle}])

    def clear_and_type(self, handle: str, text: str) -> None:
        self._cmd("POST", f"/element/{handle}/clear", {})
        if text:
            self._cmd("POST", f"/element/{handle}/value", {"text": text})

    def press_key(self, handle: str, key: str) -> None:
        self._cmd("POST", f"/element/{handle}/value", {"text": key})

    def hover(self, handle: str) -> None:
        actions = {
            "actions": [{
                "type": "pointer", "id": "mouse",
                "parameters": {"pointerType": "mouse"},
                "actions": [{"type": "pointerMove", "duration": 0,
                             "origin": {ELEMENT_KEY: handle}, "x": 0, "y": 0}],
            }]
        }
        self._cmd("POST", "/actions", actions)

    # -- scrolling ------------------------------------------------------------

    def scroll_window(self, dx: int, dy: int) -> None:
        self.execute("window.scrollBy(arguments[0], arguments[1]);", [dx, dy])

    def scroll_to_end(self) -> None:
        self.execute("window.scrollTo(0, document.body.scrollHeight);")

    def scroll_element(self, handle: str, dx: int, dy: int) -> None:
        self.execute(
            "arguments[0].scrollTop += arguments[2];"
            "arguments[0].scrollLeft += arguments[1];",
            [{ELEMENT_KEY: handle}, dx, dy])

    def scrollable_at(self, x: int, y: int) -> Optional[str]:
        result = self._execute_asset("scroll_target", [x, y])
        return result[ELEMENT_KEY] if result else None

    def popup_scroll_target(self) -> Optional[str]:
        result = self._execute_asset("popup_scroll_target")
        return result[ELEMENT_KEY] if result else None

    def viewport_size(self) -> Tuple[int, int]:
        size = self.execute("return [window.innerWidth, window.innerHeight];")
        return int(size[0]), int(size[1])

    # -- observation & change detection ----------------------------------------

    def screenshot(self) -> bytes:
        return base64.b64decode(self._cmd("GET", "/screenshot"))

    def change_token(self) -> dict:
        probe = self._execute_asset("mutation_probe")
        return {
            "window": self.current_window(),
            "windows": len(self.window_handles()),
            "url": probe["url"],
            "seq": probe["seq"],
            "focus": probe["focus"],
        }

    def changed_near(self, handle: str, token: dict, timeout_s: float = 0.5
                     ) -> bool:
        deadline = time.monotonic() + timeout_s
        while True:
            if len(self.window_handles()) != token["windows"]:
                return True
            try:
                probe = self._execute_asset("mutation_probe")
            except WebDriverError:
                return True  # navigation tore the page down
            if probe["url"] != token["url"] or probe["focus"] != token["focus"]:
                return True
            try:
                if self.execute(_script_body(load_script("changed_near")),
                                [{ELEMENT_KEY: handle}, token["seq"]]):
                    return True
            except WebDriverError:
                return True
            if time.monotonic() >= deadline:
                return False
            time.sleep(0.05)
