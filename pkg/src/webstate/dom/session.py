"""In-process browser session over the fixture DOM engine.

Implements the BrowserSession protocol without a real browser: fixture sites
load from HTML files, behaviors run synchronously, geometry comes from the
block layout in nodes.py, and screenshots are rasterized with Pillow. One
session owns its windows and frame focus exactly like a WebDriver session.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..browser import DetectedElement, ElementInfo, TabInfo
from ..clock import SystemClock
from ..errors import ClickIntercepted, ContextError
from ..resolver import WEBSP_INDEX_ATTR, is_interactive
from . import behaviors, render, selectors
from .nodes import Document, DomNode, TextNode, layout, visible_rect
from .pages import FixtureStore, build_document


@dataclass
class FixtureSite:
    site_id: str
    host: str
    routes: Dict[str, str]  # path -> absolute html file path
    defaults: Dict[str, object]
    auth_marker: str = ""


class _Window:
    def __init__(self, handle: str, opened_at: float):
        self.handle = handle
        self.document: Optional[Document] = None
        self.history: List[str] = []
        self.closed = False
        self.opened_at = opened_at


@dataclass
class ChangeToken:
    window_handle: str
    doc_id: int
    url: str
    mutation_seq: int
    focus_id: Optional[int]
    n_windows: int


_EXTERNAL_PAGE = (
    "<html><head><title>{title}</title></head>"
    "<body><h1>{title}</h1><p>Placeholder page for {url}</p></body></html>"
)


class FixtureSession:
    VIEWPORT = (1280, 720)

    def __init__(self, profile_dir: str, sites: Optional[List[FixtureSite]] = None,
                 color_scheme: str = "light", clock=None):
        if sites is None:
            from ..fixtures import standard_sites
            sites = standard_sites()
        self.sites = {site.host: site for site in sites}
        self.store = FixtureStore(
            profile_dir, defaults={s.site_id: dict(s.defaults) for s in sites})
        self.color_scheme = color_scheme
        self.clock = clock or SystemClock()
        self._windows: List[_Window] = []
        self._window_seq = 0
        self._current: Optional[_Window] = None
        self._frame_doc: Optional[Document] = None

    # ------------------------------------------------------------------ pages

    def _route(self, url: str) -> Tuple[str, str]:
        match = re.match(r"https?://([^/]+)(/[^?#]*)?", url)
        host = match.group(1) if match else ""
        path = (match.group(2) or "/") if match else "/"
        site = self.sites.get(host)
        if site is None:
            return "external", _EXTERNAL_PAGE.format(title=f"External: {host}", url=url)
        file_path = site.routes.get(path)
        if file_path is None:
            return site.site_id, _EXTERNAL_PAGE.format(
                title=f"Not found: {path}", url=url)
        with open(file_path, "r", encoding="utf-8") as fh:
            return site.site_id, fh.read()

    def _load_document(self, window: _Window, url: str) -> Document:
        site_id, markup = self._route(url)
        load_count = self.store.bump_load(site_id)
        doc = build_document(url, markup)
        ctx = behaviors.PageContext(self, window, doc, site_id, self.store, load_count)
        doc.flags["_ctx"] = ctx
        behaviors.hydrate(ctx)
        self._load_iframes(window, doc)
        return doc

    def _load_iframes(self, window: _Window, doc: Document) -> None:
        for node in doc.root.iter_composed(include_closed_shadow=True):
            if node.tag == "iframe" and node.attrs.get("src"):
                src = node.attrs["src"]
                if src.startswith("/"):
                    src = doc.origin + src
                doc.iframes[node] = self._load_document(window, src)

    # -------------------------------------------------------------- navigation

    def _new_window(self) -> _Window:
        window = _Window(f"w{self._window_seq}", self.clock.now())
        self._window_seq += 1
        self._windows.append(window)
        return window

    def navigate(self, url: str) -> None:
        if self._current is None or self._current.closed:
            self._current = self._new_window()
        self.navigate_window(self._current, url)

    def navigate_window(self, window: _Window, url: str) -> None:
        window.document = self._load_document(window, url)
        window.history.append(url)
        if window is self._current:
            self._frame_doc = window.document

    def open_window(self, url: str) -> str:
        window = self._new_window()
        self.navigate_window(window, url)
        return window.handle

    def close_window(self, window) -> None:
        if isinstance(window, str):
            window = self._window_by_handle(window)
        window.closed = True

    def current_url(self) -> str:
        return self._require_window().document.url

    def go_back(self) -> None:
        window = self._require_window()
        if len(window.history) >= 2:
            window.history.pop()
            target = window.history.pop()
            self.navigate_window(window, target)

    def window_handles(self) -> List[str]:
        return [w.handle for w in self._windows if not w.closed]

    def current_window(self) -> str:
        return self._current.handle if self._current is not None else ""

    def switch_window(self, handle: str) -> None:
        window = self._window_by_handle(handle)
        if window.closed:
            raise ContextError(0, f"window {handle} is closed")
        self._current = window
        self._frame_doc = window.document

    def window_origin(self, handle: str) -> str:
        window = self._window_by_handle(handle)
        return window.document.origin if window.document else ""

    def _window_by_handle(self, handle: str) -> _Window:
        for window in self._windows:
            if window.handle == handle:
                return window
        raise ContextError(0, f"no window {handle}")

    def _require_window(self) -> _Window:
        if self._current is None or self._current.document is None:
            raise ContextError(0, "no page loaded")
        return self._current

    def tabs(self) -> List[TabInfo]:
        out = []
        for window in self._windows:
            if window.closed or window.document is None:
                continue
            out.append(TabInfo(
                handle=window.handle,
                title=self._title(window.document),
                url=window.document.url,
                active=window is self._current,
            ))
        return out

    @staticmethod
    def _title(doc: Document) -> str:
        for node in doc.root.iter_tree():
            if node.tag == "title":
                return node.own_text()
        return doc.url

    # ----------------------------------------------------------------- frames

    def switch_to_top(self) -> None:
        window = self._require_window()
        self._frame_doc = window.document

    def switch_into_frame(self, frame_selector: Optional[str], index: int) -> bool:
        doc = self._doc()
        frames = [n for n in doc.root.iter_composed(include_closed_shadow=True)
                  if n.tag == "iframe"]
        target = None
        if frame_selector:
            matches = selectors.query_all(doc.root, frame_selector)
            target = matches[0] if matches else None
        elif 0 <= index < len(frames):
            target = frames[index]
        if target is None or target not in doc.iframes:
            return False
        self._frame_doc = doc.iframes[target]
        return True

    def current_origin(self) -> str:
        return self._doc().origin

    def _doc(self) -> Document:
        if self._frame_doc is None:
            self._require_window()
            self._frame_doc = self._current.document
        return self._frame_doc

    def _ctx(self, doc: Document) -> behaviors.PageContext:
        return doc.flags["_ctx"]

    # ---------------------------------------------------------------- queries

    def _layout(self, doc: Optional[Document] = None) -> None:
        doc = doc or self._doc()
        if doc.flags.get("_layout_at") != doc.mutation_seq:
            layout(doc, self.VIEWPORT[0])
            doc.flags["_layout_at"] = doc.mutation_seq

    def query_css(self, selector: str, shadow_aware: bool = False) -> List[DomNode]:
        root = self._doc().root
        if shadow_aware:
            return selectors.composed_query(root, selector)
        return selectors.query_all(root, selector)

    def query_xpath(self, xpath: str) -> List[DomNode]:
        return selectors.query_xpath(self._doc().root, xpath)

    def shadow_children_query(self, handle: DomNode, selector: str) -> List[DomNode]:
        if handle.shadow_root is None or handle.shadow_mode != "open":
            return []
        return selectors.query_all(handle.shadow_root, selector)

    def has_shadow_root(self, handle: DomNode) -> bool:
        return handle.shadow_root is not None and handle.shadow_mode == "open"

    def find_by_text(self, kind: str, text: str) -> List[DomNode]:
        out = []
        for node in self._doc().root.iter_composed():
            if not is_interactive(node.tag, node.attrs):
                continue
            candidate = self._label_text(node) if kind == "label" \
                else self._sibling_text(node)
            if candidate == text and text:
                out.append(node)
        return out

    def document_order(self, handles: List[DomNode]) -> List[DomNode]:
        order = {id(node): i for i, node in
                 enumerate(self._doc().root.iter_composed(include_closed_shadow=True))}
        return sorted(handles, key=lambda h: order.get(id(h), 1 << 30))

    # ------------------------------------------------------------ element info

    def _label_text(self, node: DomNode) -> str:
        if node.tag in ("input", "select", "textarea"):
            ident = node.attrs.get("id")
            if ident:
                root = node.tree_root()
                for label in selectors.query_all(root, f'label[for="{ident}"]'):
                    return label.full_text()
            for ancestor in node.ancestors():
                if ancestor.tag == "label":
                    return ancestor.full_text()
            return ""
        return node.full_text()

    def _sibling_text(self, node: DomNode) -> str:
        parent = node.parent
        if parent is None:
            return ""
        siblings = parent.children
        idx = siblings.index(node)
        for sib in reversed(siblings[:idx]):
            text = self._node_text(sib)
            if text:
                return text
        for sib in siblings[idx + 1:]:
            text = self._node_text(sib)
            if text:
                return text
        return ""

    @staticmethod
    def _node_text(sib) -> str:
        if isinstance(sib, TextNode):
            return sib.normalized()
        if isinstance(sib, DomNode):
            return sib.full_text()
        return ""

    def element_info(self, handle: DomNode) -> ElementInfo:
        doc = handle.document or self._doc()
        self._layout(doc)
        rect = None
        if handle.is_connected():
            box = visible_rect(handle, doc.scroll_y, self.VIEWPORT)
            rect = box.as_tuple() if box is not None else None
        parent = handle.parent if isinstance(handle.parent, DomNode) else None
        parent_text = parent.full_text()[:200] if parent is not None \
            and parent.tag != "#shadow" else ""
        return ElementInfo(
            tag=handle.tag,
            attrs=dict(handle.attrs),
            text=handle.full_text(),
            label_text=self._label_text(handle),
            sibling_text=self._sibling_text(handle),
            parent_text=parent_text,
            value=handle.value,
            checked=handle.checked,
            css_path=selectors.css_path(handle),
            xpath=selectors.xpath_for(handle),
            outer_html=handle.outer_html(),
            rect=rect,
        )

    # ------------------------------------------------------------------ index

    def _iter_rendered(self, root: DomNode):
        """Rendered-order traversal skipping display:none subtrees, descending
        only open shadow roots (what an injected page script can reach)."""
        if root.style.display == "none":
            return
        yield root
        if root.shadow_root is not None:
            if root.shadow_mode != "open":
                return
            children = root.shadow_root.element_children()
        else:
            children = root.element_children()
        for child in children:
            yield from self._iter_rendered(child)

    def run_interaction_index(self) -> int:
        doc = self._doc()
        if doc.flags.get("script_injection_blocked"):
            from ..errors import IndexUnavailable
            raise IndexUnavailable("script injection blocked by page")
        count = 0
        for node in self._iter_rendered(doc.root):
            if is_interactive(node.tag, node.attrs):
                node.set_attr(WEBSP_INDEX_ATTR, str(count))
                count += 1
        return count

    def detect_interactives(self) -> List[DetectedElement]:
        doc = self._doc()
        self._layout(doc)
        modal = self._topmost_modal(doc)
        out = []
        for node in self._iter_rendered(doc.root):
            if not is_interactive(node.tag, node.attrs):
                continue
            box = visible_rect(node, doc.scroll_y, self.VIEWPORT)
            if box is None:
                continue
            in_popup = modal is not None and modal.contains(node)
            if modal is not None and not in_popup \
                    and "data-fx-backdrop" in modal.attrs:
                continue  # opaque modal backdrop hides the page behind it
            text = node.full_text() or self._label_text(node) \
                or node.attrs.get("aria-label", "") or node.value
            out.append(DetectedElement(
                handle=node, tag=node.tag, text=text,
                rect=box.as_tuple(), in_popup=in_popup,
            ))
        return out

    def popup_scroll_target(self) -> Optional[DomNode]:
        """Scrollable node inside the topmost open modal; the modal itself if
        none of its descendants scroll; None when no modal is open."""
        doc = self._doc()
        self._layout(doc)
        modal = self._topmost_modal(doc)
        if modal is None:
            return None
        for node in self._iter_rendered(modal):
            st = node.style
            if st.overflow in ("auto", "scroll") and node.rect is not None \
                    and node.content_height > node.rect.h:
                return node
        return modal

    def _topmost_modal(self, doc: Document) -> Optional[DomNode]:
        top = None
        for node in self._iter_rendered(doc.root):
            if "data-fx-modal" in node.attrs and not behaviors.is_hidden(node):
                top = node
        return top

    # ------------------------------------------------------------- interaction

    def dispatch_event(self, target: DomNode, event_type: str) -> None:
        doc = target.document
        ctx = self._ctx(doc)
        behaviors.dispatch(ctx, target, event_type)

    def _hit_candidates(self, doc: Document, x: int, y: int) -> List[DomNode]:
        self._layout(doc)
        order = {id(n): i for i, n in enumerate(
            doc.root.iter_composed(include_closed_shadow=True))}
        found = []
        for node in self._iter_rendered(doc.root):
            box = visible_rect(node, doc.scroll_y, self.VIEWPORT)
            if box is not None and box.contains(x, y):
                found.append(node)

        def zkey(node: DomNode):
            overlay = 0
            z = 0
            current = node
            while current is not None:
                st = current.style
                if st.position in ("fixed", "absolute"):
                    overlay = 1
                z = max(z, st.z_index)
                nxt = current.parent
                if nxt is None:
                    root = current.tree_root()
                    nxt = root.host if root.tag == "#shadow" else None
                current = nxt
            return (overlay, z, order.get(id(node), 0))

        return sorted(found, key=zkey, reverse=True)

    def element_at_point(self, x: int, y: int) -> Optional[DomNode]:
        candidates = self._hit_candidates(self._doc(), x, y)
        return candidates[0] if candidates else None

    def _scroll_into_view(self, node: DomNode) -> None:
        doc = node.document
        self._layout(doc)
        if node.rect is None:
            return
        # settle scroll containers first, then the window
        offset = 0
        for ancestor in node.ancestors():
            st = ancestor.style
            if ancestor.rect is not None and st.overflow in ("auto", "scroll") \
                    and st.height is not None \
                    and ancestor.content_height > ancestor.rect.h:
                desired = node.rect.y - ancestor.rect.y \
                    - (ancestor.rect.h - (node.rect.h if node.rect else 0)) // 2
                ancestor.scroll_top = max(
                    0, min(desired, ancestor.content_height - ancestor.rect.h))
                offset += ancestor.scroll_top
        from .nodes import _in_fixed_subtree
        if _in_fixed_subtree(node):
            return
        page_y = node.rect.y - offset
        max_scroll = max(0, (doc.root.rect.h if doc.root.rect else 0)
                         - self.VIEWPORT[1])
        doc.scroll_y = max(0, min(page_y - self.VIEWPORT[1] // 2, max_scroll))

    def native_click(self, handle: DomNode) -> None:
        if not handle.is_connected():
            raise ClickIntercepted("element is stale")
        doc = handle.document
        box = visible_rect(handle, doc.scroll_y, self.VIEWPORT)
        if box is None:
            self._scroll_into_view(handle)
            box = visible_rect(handle, doc.scroll_y, self.VIEWPORT)
        if box is None:
            raise ClickIntercepted("element not visible after scrolling")
        cx, cy = box.center()
        top = None
        candidates = self._hit_candidates(doc, cx, cy)
        if candidates:
            top = candidates[0]
        if top is not None and top is not handle \
                and not handle.contains(top) and not top.contains(handle):
            raise ClickIntercepted(f"click intercepted by {top!r}")
        # a real driver click is a trusted input: it focuses, then clicks
        doc.set_focus(handle)
        self.dispatch_event(handle, "click")

    def script_click(self, handle: DomNode) -> None:
        # element.click() from script: dispatches the event, never focuses
        if not handle.is_connected():
            raise ClickIntercepted("element is stale")
        self.dispatch_event(handle, "click")

    def pointer_sequence(self, handle: DomNode) -> None:
        # synthesized trusted pointer gesture: focus plus the full sequence
        if not handle.is_connected():
            raise ClickIntercepted("element is stale")
        handle.document.set_focus(handle)
        self.dispatch_event(handle, "pointerdown")
        self.dispatch_event(handle, "pointerup")
        self.dispatch_event(handle, "click")

    def focus(self, handle: DomNode) -> None:
        handle.document.set_focus(handle)

    def clear_and_type(self, handle: DomNode, text: str) -> None:
        self.focus(handle)
        handle.set_value("")
        if text:
            handle.set_value(text)
        self.dispatch_event(handle, "input")

    def press_key(self, handle: DomNode, key: str) -> None:
        self.focus(handle)
        self.dispatch_event(handle, "key")

    def hover(self, handle: DomNode) -> None:
        self.dispatch_event(handle, "hover")

    # -------------------------------------------------------------- scrolling

    def scroll_window(self, dx: int, dy: int) -> None:
        doc = self._doc()
        self._layout(doc)
        max_scroll = max(0, (doc.root.rect.h if doc.root.rect else 0)
                         - self.VIEWPORT[1])
        doc.scroll_y = max(0, min(doc.scroll_y + dy, max_scroll))

    def scroll_to_end(self) -> None:
        doc = self._doc()
        self._layout(doc)
        doc.scroll_y = max(0, (doc.root.rect.h if doc.root.rect else 0)
                           - self.VIEWPORT[1])

    def scroll_element(self, handle: DomNode, dx: int, dy: int) -> None:
        # the block layout never produces horizontal overflow, so dx clamps
        # to zero here; the WebDriver backend performs real scrollLeft writes
        self._layout(handle.document)
        if handle.rect is None:
            return
        limit = max(0, handle.content_height - handle.rect.h)
        handle.scroll_top = max(0, min(handle.scroll_top + dy, limit))
        handle.document.record_mutation(handle, "scroll")

    def scrollable_at(self, x: int, y: int) -> Optional[DomNode]:
        doc = self._doc()
        for node in self._hit_candidates(doc, x, y):
            st = node.style
            if st.overflow in ("auto", "scroll") and node.rect is not None \
                    and node.content_height > node.rect.h:
                return node
        return None  # document scrolling element

    def viewport_size(self) -> Tuple[int, int]:
        return self.VIEWPORT

    # ------------------------------------------------------------ observation

    def screenshot(self) -> bytes:
        doc = self._doc()
        self._layout(doc)
        # pages opting into prefers-color-scheme render dark unless the
        # session forces the light scheme (the benchmark default)
        if "data-fx-colors" in doc.body().attrs:
            scheme = "light" if self.color_scheme == "light" else "dark"
        else:
            scheme = "light"
        return render.render_png(
            doc, doc.scroll_y, self.VIEWPORT, scheme,
            iter_rendered=self._iter_rendered)

    def change_token(self) -> ChangeToken:
        doc = self._doc()
        return ChangeToken(
            window_handle=self.current_window(),
            doc_id=id(doc),
            url=doc.url,
            mutation_seq=doc.mutation_seq,
            focus_id=id(doc.focused) if doc.focused is not None else None,
            n_windows=len(self.window_handles()),
        )

    def changed_near(self, handle: DomNode, token: ChangeToken,
                     timeout_s: float = 0.5) -> bool:
        """Interaction-registered signal: mutation inside the target's subtree
        or on its shadow hosts, attribute change on the target, navigation
        (including new windows), or focus change — the fixture engine is
        synchronous so the timeout is irrelevant here."""
        if len(self.window_handles()) != token.n_windows:
            return True
        window = self._current
        if window is None or window.document is None:
            return False
        doc = window.document
        if id(doc) != token.doc_id or doc.url != token.url:
            return True
        focus_id = id(doc.focused) if doc.focused is not None else None
        if focus_id != token.focus_id:
            return True
        hosts = set(map(id, handle.shadow_host_chain()))
        for seq, node, kind in doc.mutations:
            if seq <= token.mutation_seq:
                continue
            if kind == "attr:" + WEBSP_INDEX_ATTR:
                continue  # probe attribute, not page activity
            if node is handle or handle.contains(node) or id(node) in hosts:
                return True
        return False

    # --------------------------------------------------------------- fixtures

    def state_snapshot(self) -> dict:
        return self.store.snapshot()
