"""In-process DOM engine and fixture browser backend."""

from .nodes import Document, DomNode, Rect, TextNode, layout, visible_rect
from .pages import FixtureStore, build_document, parse_html
from .session import FixtureSession, FixtureSite

__all__ = [
    "Document", "DomNode", "Rect", "TextNode", "layout", "visible_rect",
    "FixtureStore", "build_document", "parse_html",
    "FixtureSession", "FixtureSite",
]
