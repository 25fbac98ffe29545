"""Minimal DOM tree with shadow roots, block layout, and mutation tracking.

This backs the in-process fixture browser. It models just enough of a real
rendering engine for the engine modules to be exercised offline: element and
text nodes, open/closed shadow roots, inline style parsing (height, width,
overflow, display, position, top/left, z-index), a vertical block layout with
scroll containers, and a hit-testable z-order.
"""

import re
from typing import Dict, Iterator, List, Optional, Tuple

DEFAULT_LEAF_HEIGHT = 28
TEXT_LINE_HEIGHT = 18
HEADING_HEIGHT = 36


class TextNode:
    __slots__ = ("text", "parent")

    def __init__(self, text: str):
        self.text = text
        self.parent: Optional["DomNode"] = None

    def normalized(self) -> str:
        return " ".join(self.text.split())


class Style:
    """Parsed subset of an inline style attribute."""

    __slots__ = ("height", "width", "overflow", "display", "position",
                 "top", "left", "z_index")

    def __init__(self, raw: str = ""):
        props = {}
        for chunk in raw.split(";"):
            name, _, value = chunk.partition(":")
            if value:
                props[name.strip().lower()] = value.strip().lower()
        self.height = _px(props.get("height"))
        self.width = _px(props.get("width"))
        self.overflow = props.get("overflow-y") or props.get("overflow") or "visible"
        self.display = props.get("display", "")
        self.position = props.get("position", "static")
        self.top = _px(props.get("top")) or 0
        self.left = _px(props.get("left")) or 0
        self.z_index = int(props.get("z-index", "0") or 0)


def _px(value: Optional[str]) -> Optional[int]:
    if not value:
        return None
    match = re.match(r"(-?\d+)", value)
    return int(match.group(1)) if match else None


class Rect:
    __slots__ = ("x", "y", "w", "h")

    def __init__(self, x, y, w, h):
        self.x, self.y, self.w, self.h = x, y, w, h

    def contains(self, px, py) -> bool:
        return self.x <= px < self.x + self.w and self.y <= py < self.y + self.h

    def intersects(self, other: "Rect") -> bool:
        return not (self.x + self.w <= other.x or other.x + other.w <= self.x
                    or self.y + self.h <= other.y or other.y + other.h <= self.y)

    def center(self) -> Tuple[int, int]:
        return self.x + self.w // 2, self.y + self.h // 2

    def as_tuple(self):
        return (self.x, self.y, self.w, self.h)

    def __repr__(self):
        return f"Rect({self.x},{self.y},{self.w},{self.h})"


class DomNode:
    def __init__(self, tag: str, attrs: Optional[Dict[str, str]] = None):
        self.tag = tag.lower()
        self.attrs: Dict[str, str] = dict(attrs or {})
        self.parent: Optional[DomNode] = None
        self.children: List[object] = []  # DomNode | TextNode
        self.shadow_root: Optional[DomNode] = None  # tag "#shadow"
        self.shadow_mode: Optional[str] = None  # open | closed (set on host)
        self.host: Optional[DomNode] = None  # set on "#shadow" roots
        self.document: Optional["Document"] = None
        self.handlers: Dict[str, List] = {}
        # live element state
        self.value: str = self.attrs.get("value", "")
        self.checked: bool = "checked" in self.attrs
        self.scroll_top: int = 0
        self.content_height: int = 0
        self.rect: Optional[Rect] = None
        self._style: Optional[Style] = None

    # -- tree construction -------------------------------------------------

    def append(self, child) -> "DomNode":
        child.parent = self
        self.children.append(child)
        if isinstance(child, DomNode):
            child._set_document(self.document)
            if self.document is not None:
                self.document.record_mutation(child, "insert")
        return child

    def insert_before(self, child, reference) -> None:
        child.parent = self
        idx = self.children.index(reference)
        self.children.insert(idx, child)
        if isinstance(child, DomNode):
            child._set_document(self.document)
            if self.document is not None:
                self.document.record_mutation(child, "insert")

    def remove(self) -> None:
        if self.parent is not None:
            self.parent.children.remove(self)
            if self.document is not None:
                self.document.record_mutation(self.parent, "remove")
            self.parent = None

    def attach_shadow(self, mode: str = "open") -> "DomNode":
        root = DomNode("#shadow")
        root.host = self
        root._set_document(self.document)
        self.shadow_root = root
        self.shadow_mode = mode
        return root

    def _set_document(self, document) -> None:
        self.document = document
        for child in self.element_children():
            child._set_document(document)
        if self.shadow_root is not None:
            self.shadow_root._set_document(document)

    # -- attributes & state --------------------------------------------------

    def get(self, name: str) -> Optional[str]:
        return self.attrs.get(name)

    def set_attr(self, name: str, value: str) -> None:
        if self.attrs.get(name) == value:
            return
        self.attrs[name] = value
        self._style = None
        if self.document is not None:
            self.document.record_mutation(self, "attr:" + name)

    def remove_attr(self, name: str) -> None:
        if name in self.attrs:
            del self.attrs[name]
            self._style = None
            if self.document is not None:
                self.document.record_mutation(self, "attr:" + name)

    def set_checked(self, checked: bool) -> None:
        if self.checked != checked:
            self.checked = checked
            if self.document is not None:
                self.document.record_mutation(self, "prop:checked")

    def set_value(self, value: str) -> None:
        if self.value != value:
            self.value = value
            if self.document is not None:
                self.document.record_mutation(self, "prop:value")

    @property
    def classes(self) -> List[str]:
        return (self.attrs.get("class") or "").split()

    def add_class(self, name: str) -> None:
        parts = self.classes
        if name not in parts:
            self.set_attr("class", " ".join(parts + [name]))

    def remove_class(self, name: str) -> None:
        parts = [c for c in self.classes if c != name]
        self.set_attr("class", " ".join(parts))

    @property
    def style(self) -> Style:
        if self._style is None:
            self._style = Style(self.attrs.get("style", ""))
        return self._style

    # -- traversal -----------------------------------------------------------

    def element_children(self) -> List["DomNode"]:
        return [c for c in self.children if isinstance(c, DomNode)]

    def rendered_children(self) -> List[object]:
        """Children used for layout/paint: shadow contents replace light ones."""
        if self.shadow_root is not None:
            return list(self.shadow_root.children)
        return list(self.children)

    def iter_tree(self) -> Iterator["DomNode"]:
        """All elements in this node's own tree (not descending shadow roots)."""
        yield self
        for child in self.element_children():
            yield from child.iter_tree()

    def iter_composed(self, include_closed_shadow: bool = False) -> Iterator["DomNode"]:
        """Rendered-order traversal descending into shadow roots at the host.

        Closed shadow roots are skipped unless explicitly requested; script
        access cannot reach them, mirroring the platform.
        """
        yield self
        if self.shadow_root is not None:
            if include_closed_shadow or self.shadow_mode == "open":
                for child in self.shadow_root.element_children():
                    yield from child.iter_composed(include_closed_shadow)
            return
        for child in self.element_children():
            yield from child.iter_composed(include_closed_shadow)

    def ancestors(self) -> Iterator["DomNode"]:
        """Composed-tree ancestors: crosses shadow boundaries via the host."""
        node = self
        while True:
            if node.parent is not None:
                node = node.parent
            elif node.tag == "#shadow" and node.host is not None:
                node = node.host
            else:
                return
            yield node

    def tree_root(self) -> "DomNode":
        node = self
        while node.parent is not None:
            node = node.parent
        return node

    def contains(self, other: "DomNode") -> bool:
        """True if other is self or inside self's composed subtree."""
        if other is self:
            return True
        return any(ancestor is self for ancestor in other.ancestors())

    def in_shadow(self) -> bool:
        return self.tree_root().tag == "#shadow"

    def shadow_host_chain(self) -> List["DomNode"]:
        hosts = []
        node = self
        while True:
            root = node.tree_root()
            if root.tag != "#shadow" or root.host is None:
                return hosts
            hosts.append(root.host)
            node = root.host

    def is_connected(self) -> bool:
        root = self.tree_root()
        while root.tag == "#shadow" and root.host is not None:
            root = root.host.tree_root()
        return self.document is not None and root is self.document.root

    # -- text ------------------------------------------------------------------

    def own_text(self) -> str:
        return " ".join(
            c.normalized() for c in self.children
            if isinstance(c, TextNode) and c.normalized()
        )

    def full_text(self) -> str:
        parts = []
        for child in self.rendered_children():
            if isinstance(child, TextNode):
                text = child.normalized()
                if text:
                    parts.append(text)
            elif isinstance(child, DomNode):
                if child.style.display == "none":
                    continue
                inner = child.full_text()
                if inner:
                    parts.append(inner)
        return " ".join(parts)

    def outer_html(self) -> str:
        attrs = "".join(f' {k}="{v}"' for k, v in sorted(self.attrs.items()))
        inner = []
        for child in self.children:
            if isinstance(child, TextNode):
                inner.append(child.text)
            else:
                inner.append(child.outer_html())
        return f"<{self.tag}{attrs}>{''.join(inner)}</{self.tag}>"

    def __repr__(self):
        ident = self.attrs.get("id") or self.attrs.get("data-testid") or ""
        return f"<{self.tag} {ident}>".replace("  ", " ")


class Document:
    """One loaded page (per window or per iframe)."""

    def __init__(self, url: str, root: DomNode):
        self.url = url
        self.root = root
        self.mutation_seq = 0
        self.mutations: List[Tuple[int, DomNode, str]] = []
        self.focused: Optional[DomNode] = None
        self.scroll_y = 0
        self.flags: Dict[str, object] = {}  # fixture-visible page flags (e.g. form submits)
        self.iframes: Dict[DomNode, "Document"] = {}
        root._set_document(self)

    @property
    def origin(self) -> str:
        match = re.match(r"(https?://[^/]+)", self.url)
        return match.group(1) if match else self.url

    def record_mutation(self, node: DomNode, kind: str) -> None:
        self.mutation_seq += 1
        self.mutations.append((self.mutation_seq, node, kind))
        if len(self.mutations) > 4096:
            del self.mutations[:2048]

    def set_focus(self, node: Optional[DomNode]) -> None:
        if self.focused is not node:
            self.focused = node
            self.record_mutation(node if node is not None else self.root, "focus")

    def body(self) -> DomNode:
        for child in self.root.element_children():
            if child.tag == "body":
                return child
        return self.root


# ---------------------------------------------------------------------------
# Layout
# ---------------------------------------------------------------------------

_SKIP_LAYOUT_TAGS = {"head", "script", "style", "template", "title", "meta", "link"}


def layout(document: Document, viewport_w: int = 1280) -> None:
    """Assign page-coordinate rects to every rendered element.

    Vertical block stacking; position fixed/absolute elements are placed from
    their style offsets and excluded from normal flow. Scroll containers get
    a client box of their style height and remember their content height.
    """
    _layout_node(document.root, 0, 0, viewport_w)


def _layout_node(node: DomNode, x: int, y: int, width: int) -> int:
    if node.tag in _SKIP_LAYOUT_TAGS:
        node.rect = None
        return 0
    style = node.style
    if style.display == "none":
        _clear_rects(node)
        return 0

    out_of_flow = style.position in ("fixed", "absolute")
    if out_of_flow:
        ox, oy = style.left, style.top
        ow = style.width or width
        content = _layout_children(node, ox, oy, ow)
        oh = style.height or content or DEFAULT_LEAF_HEIGHT
        node.rect = Rect(ox, oy, ow, oh)
        node.content_height = content
        return 0

    w = style.width or width
    content = _layout_children(node, x, y, w)
    if style.height is not None:
        h = style.height
    elif content:
        h = content
    else:
        h = _intrinsic_height(node)
    node.rect = Rect(x, y, w, h)
    node.content_height = content
    return h


def _layout_children(node: DomNode, x: int, y: int, width: int) -> int:
    cursor = y
    for child in node.rendered_children():
        if isinstance(child, TextNode):
            if child.normalized():
                cursor += TEXT_LINE_HEIGHT
            continue
        cursor += _layout_node(child, x, cursor, width)
    return cursor - y


def _intrinsic_height(node: DomNode) -> int:
    if node.tag in ("h1", "h2", "h3"):
        return HEADING_HEIGHT
    if node.own_text() or node.tag in ("button", "input", "select", "textarea",
                                       "a", "label", "li", "p", "span", "div",
                                       "summary", "option"):
        return DEFAULT_LEAF_HEIGHT
    return 0


def _clear_rects(node: DomNode) -> None:
    node.rect = None
    for child in node.rendered_children():
        if isinstance(child, DomNode):
            _clear_rects(child)


def visible_rect(node: DomNode, scroll_y: int, viewport) -> Optional[Rect]:
    """Viewport-coordinate rect of a node after window and container scrolling,
    clipped by scroll-container ancestors; None when fully hidden."""
    if node.rect is None:
        return None
    fixed = _in_fixed_subtree(node)
    rx, ry = node.rect.x, node.rect.y
    clip: Optional[Rect] = None
    for ancestor in node.ancestors():
        if ancestor.rect is None:
            if ancestor.tag in ("#shadow", "html"):
                continue
            return None
        st = ancestor.style
        if st.overflow in ("auto", "scroll", "hidden") and st.height is not None:
            ry -= ancestor.scroll_top
            box = Rect(ancestor.rect.x, ancestor.rect.y, ancestor.rect.w, ancestor.rect.h)
            clip = box if clip is None else _intersect(clip, box)
    if not fixed:
        ry -= scroll_y
        if clip is not None:
            clip = Rect(clip.x, clip.y - scroll_y, clip.w, clip.h)
    out = Rect(rx, ry, node.rect.w, node.rect.h)
    if clip is not None:
        out = _intersect(out, clip)
    view = Rect(0, 0, viewport[0], viewport[1])
    out = _intersect(out, view)
    if out.w <= 0 or out.h <= 0:
        return None
    return out


def _in_fixed_subtree(node: DomNode) -> bool:
    current: Optional[DomNode] = node
    while current is not None:
        if current.style.position == "fixed":
            return True
        nxt = current.parent
        if nxt is None:
            root = current.tree_root()
            nxt = root.host if root.tag == "#shadow" else None
        current = nxt
    return False


def _intersect(a: Rect, b: Rect) -> Rect:
    x1, y1 = max(a.x, b.x), max(a.y, b.y)
    x2 = min(a.x + a.w, b.x + b.w)
    y2 = min(a.y + a.h, b.y + b.h)
    return Rect(x1, y1, max(0, x2 - x1), max(0, y2 - y1))
