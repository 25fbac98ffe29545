"""Browser session abstraction.

Two backends implement the same surface: the in-process fixture DOM engine
(webstate.dom.session.FixtureSession) used for all offline tests, and a W3C
WebDriver HTTP client (webstate.browser.webdriver.WebDriverSession) for real
browsers. Engine modules (resolver, replay, agent runtime) only talk to this
protocol.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Protocol, Tuple, runtime_checkable


@dataclass
class ElementInfo:
    """Snapshot of one live element, as the injected page script reports it."""

    tag: str
    attrs: Dict[str, str] = field(default_factory=dict)
    text: str = ""
    label_text: str = ""
    sibling_text: str = ""
    parent_text: str = ""
    value: str = ""
    checked: bool = False
    css_path: str = ""
    xpath: str = ""
    outer_html: str = ""
    rect: Optional[Tuple[int, int, int, int]] = None  # viewport coords, None if offscreen


@dataclass
class TabInfo:
    handle: str
    title: str
    url: str
    active: bool


@dataclass
class DetectedElement:
    """One interactive element found by the page-wide detection script."""

    handle: object
    tag: str
    text: str
    rect: Tuple[int, int, int, int]
    in_popup: bool = False


@runtime_checkable
class BrowserSession(Protocol):
    """Operations engine modules rely on; see FixtureSession for semantics."""

    # navigation & windows
    def navigate(self, url: str) -> None: ...
    def current_url(self) -> str: ...
    def go_back(self) -> None: ...
    def window_handles(self): ...
    def current_window(self) -> str: ...
    def switch_window(self, handle: str) -> None: ...
    def window_origin(self, handle: str) -> str: ...
    def tabs(self): ...
    # frame context
    def switch_to_top(self) -> None: ...
    def switch_into_frame(self, frame_selector: Optional[str], index: int) -> bool: ...
    def current_origin(self) -> str: ...
    # queries (current frame)
    def query_css(self, selector: str, shadow_aware: bool = False): ...
    def query_xpath(self, xpath: str): ...
    def find_by_text(self, kind: str, text: str): ...  # kind: label | sibling
    def shadow_children_query(self, handle, selector: str): ...
    def has_shadow_root(self, handle) -> bool: ...
    def element_info(self, handle) -> ElementInfo: ...
    def document_order(self, handles): ...
    def run_interaction_index(self) -> int: ...
    def detect_interactives(self): ...
    # interaction
    def native_click(self, handle) -> None: ...
    def script_click(self, handle) -> None: ...
    def pointer_sequence(self, handle) -> None: ...
    def focus(self, handle) -> None: ...
    def clear_and_type(self, handle, text: str) -> None: ...
    def press_key(self, handle, key: str) -> None: ...
    def hover(self, handle) -> None: ...
    # scrolling
    def scroll_window(self, dx: int, dy: int) -> None: ...
    def scroll_to_end(self) -> None: ...
    def scroll_element(self, handle, dx: int, dy: int) -> None: ...
    def scrollable_at(self, x: int, y: int): ...
    def popup_scroll_target(self): ...
    def viewport_size(self) -> Tuple[int, int]: ...
    # observation & change detection
    def screenshot(self) -> bytes: ...
    def change_token(self): ...
    def changed_near(self, handle, token, timeout_s: float) -> bool: ...
