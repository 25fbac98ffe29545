"""Fixture page loading: HTML parsing, declarative shadow roots, and the
profile-backed state store.

Fixture HTML uses ``data-fx-*`` attributes to declare dynamic behavior; the
same attributes are interpreted by fixtures.js when the pages are served to a
real browser, so both backends share one source of truth for semantics.
"""

import json
import os
from html.parser import HTMLParser
from typing import Dict, Optional

from .nodes import Document, DomNode, TextNode

VOID_TAGS = {"input", "br", "img", "meta", "link", "hr", "source"}


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root: Optional[DomNode] = None
        self.stack = []

    def handle_starttag(self, tag, attrs):
        node = DomNode(tag, {k: (v if v is not None else "") for k, v in attrs})
        if self.stack:
            self.stack[-1].append(node)
        elif self.root is None:
            self.root = node
        if tag.lower() not in VOID_TAGS:
            self.stack.append(node)

    def handle_endtag(self, tag):
        for i in range(len(self.stack) - 1, -1, -1):
            if self.stack[i].tag == tag.lower():
                del self.stack[i:]
                return

    def handle_data(self, data):
        if self.stack and data.strip():
            text = TextNode(data)
            text.parent = self.stack[-1]
            self.stack[-1].children.append(text)


def parse_html(markup: str) -> DomNode:
    builder = _TreeBuilder()
    builder.feed(markup)
    root = builder.root
    if root is None:
        root = DomNode("html")
    if root.tag != "html":
        html = DomNode("html")
        body = DomNode("body")
        html.append(body)
        body.append(root)
        root = html
    _hoist_declarative_shadow_roots(root)
    return root


def _hoist_declarative_shadow_roots(root: DomNode) -> None:
    """Convert <template shadowrootmode=...> children into host shadow roots."""
    for node in list(root.iter_tree()):
        for child in list(node.element_children()):
            if child.tag == "template" and child.attrs.get("shadowrootmode"):
                shadow = node.attach_shadow(child.attrs["shadowrootmode"])
                for sub in list(child.children):
                    child.children.remove(sub)
                    sub.parent = shadow
                    shadow.children.append(sub)
                    if isinstance(sub, DomNode):
                        sub._set_document(node.document)
                node.children.remove(child)
        if node.shadow_root is not None:
            _hoist_declarative_shadow_roots(node.shadow_root)


class FixtureStore:
    """Persistent per-profile fixture state, the stand-in for server-side
    account state. Lives as one JSON file inside the browser profile dir so
    run-profile copies inherit and isolate it exactly like cookies."""

    FILENAME = "fixture_state.json"

    def __init__(self, profile_dir: str, defaults: Optional[Dict[str, Dict]] = None):
        self.profile_dir = profile_dir
        self.path = os.path.join(profile_dir, self.FILENAME)
        self.defaults = defaults or {}
        self._data = self._load()

    def _load(self) -> dict:
        if os.path.exists(self.path):
            with open(self.path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return {"sites": {}, "load_counts": {}}

    def _save(self) -> None:
        os.makedirs(self.profile_dir, exist_ok=True)
        with open(self.path, "w", encoding="utf-8") as fh:
            json.dump(self._data, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def get(self, site_id: str, key: str, default=None):
        site = self._data["sites"].get(site_id, {})
        if key in site:
            return site[key]
        site_defaults = self.defaults.get(site_id, {})
        return site_defaults.get(key, default)

    def set(self, site_id: str, key: str, value) -> None:
        self._data["sites"].setdefault(site_id, {})[key] = value
        self._save()

    def site_state(self, site_id: str) -> dict:
        merged = dict(self.defaults.get(site_id, {}))
        merged.update(self._data["sites"].get(site_id, {}))
        return merged

    def bump_load(self, site_id: str) -> int:
        counts = self._data.setdefault("load_counts", {})
        counts[site_id] = counts.get(site_id, 0) + 1
        self._save()
        return counts[site_id]

    def snapshot(self) -> dict:
        return {site: self.site_state(site) for site in
                set(self._data["sites"]) | set(self.defaults)}


def build_document(url: str, markup: str) -> Document:
    return Document(url, parse_html(markup))
