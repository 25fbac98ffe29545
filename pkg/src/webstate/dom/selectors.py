"""CSS-selector and XPath subset used by the fixture DOM.

Supports what the recorder emits and the resolver consumes: tag, ``#id``,
``.class``, ``[attr]``/``[attr="value"]``, ``:nth-of-type(n)``, compounds of
those, and the descendant / ``>`` combinators. XPath support is limited to
absolute positional paths (``/html/body/div[2]/button``). Attribute values
containing quotes or brackets are not supported.
"""

import re
from typing import List, Optional

from .nodes import DomNode

_COMPOUND_RE = re.compile(
    r"(?P<tag>[a-zA-Z][\w-]*|\*)?"
    r"(?P<rest>(?:#[\w-]+|\.[\w-]+|\[[^\]]+\]|:nth-of-type\(\d+\)|:nth-child\(\d+\))*)"
)
_PART_RE = re.compile(
    r"#(?P<id>[\w-]+)|\.(?P<cls>[\w-]+)|\[(?P<attr>[^\]]+)\]"
    r"|:nth-of-type\((?P<nth_type>\d+)\)|:nth-child\((?P<nth_child>\d+)\)"
)


class Compound:
    __slots__ = ("tag", "id", "classes", "attrs", "nth_of_type", "nth_child")

    def __init__(self, tag=None, id=None, classes=None, attrs=None,
                 nth_of_type=None, nth_child=None):
        self.tag = tag
        self.id = id
        self.classes = classes or []
        self.attrs = attrs or []  # (name, value-or-None)
        self.nth_of_type = nth_of_type
        self.nth_child = nth_child


class SelectorError(ValueError):
    pass


def _tokenize(text: str) -> List[str]:
    tokens: List[str] = []
    buf: List[str] = []
    depth = 0
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in " \t>":
            if buf:
                tokens.append("".join(buf))
                buf = []
            if ch == ">":
                tokens.append(">")
            continue
        buf.append(ch)
    if buf:
        tokens.append("".join(buf))
    return tokens


def parse_selector(selector: str) -> List[tuple]:
    """Returns [(combinator, Compound), ...]; first combinator is ' '."""
    text = selector.strip()
    if not text:
        raise SelectorError("empty selector")
    out = []
    combinator = " "
    for token in _tokenize(text):
        if token == ">":
            combinator = ">"
            continue
        out.append((combinator, _parse_compound(token)))
        combinator = " "
    if not out:
        raise SelectorError(f"unparseable selector: {selector!r}")
    return out


def _parse_compound(token: str) -> Compound:
    match = _COMPOUND_RE.fullmatch(token)
    if match is None:
        raise SelectorError(f"unparseable compound: {token!r}")
    compound = Compound(tag=None if match.group("tag") in (None, "*")
                        else match.group("tag").lower())
    for part in _PART_RE.finditer(match.group("rest") or ""):
        if part.group("id"):
            compound.id = part.group("id")
        elif part.group("cls"):
            compound.classes.append(part.group("cls"))
        elif part.group("attr"):
            name, _, raw = part.group("attr").partition("=")
            value = raw.strip().strip("\"'") if raw else None
            compound.attrs.append((name.strip(), value))
        elif part.group("nth_type"):
            compound.nth_of_type = int(part.group("nth_type"))
        elif part.group("nth_child"):
            compound.nth_child = int(part.group("nth_child"))
    return compound


def _matches_compound(node: DomNode, compound: Compound) -> bool:
    if node.tag.startswith("#"):
        return False
    if compound.tag is not None and node.tag != compound.tag:
        return False
    if compound.id is not None and node.attrs.get("id") != compound.id:
        return False
    for cls in compound.classes:
        if cls not in node.classes:
            return False
    for name, value in compound.attrs:
        if name == "checked":
            if not node.checked:
                return False
            continue
        actual = node.attrs.get(name)
        if actual is None or (value is not None and actual != value):
            return False
    if compound.nth_of_type is not None:
        if _nth_of_type(node) != compound.nth_of_type:
            return False
    if compound.nth_child is not None:
        if _nth_child(node) != compound.nth_child:
            return False
    return True


def _siblings(node: DomNode) -> List[DomNode]:
    if node.parent is None:
        return [node]
    return node.parent.element_children()


def _nth_of_type(node: DomNode) -> int:
    count = 0
    for sibling in _siblings(node):
        if sibling.tag == node.tag:
            count += 1
        if sibling is node:
            return count
    return count


def _nth_child(node: DomNode) -> int:
    for i, sibling in enumerate(_siblings(node), start=1):
        if sibling is node:
            return i
    return 0


def _chain_matches(node: DomNode, chain: List[tuple], cross_shadow: bool) -> bool:
    combinator, compound = chain[-1]
    if not _matches_compound(node, compound):
        return False
    rest = chain[:-1]
    if not rest:
        return True
    parents = _parents_for_match(node, cross_shadow)
    if combinator == ">":
        return bool(parents) and _chain_matches_at(parents[0], rest, cross_shadow)
    return any(_chain_matches_at(p, rest, cross_shadow) for p in parents)


def _chain_matches_at(node: DomNode, chain: List[tuple], cross_shadow: bool) -> bool:
    return _chain_matches(node, chain, cross_shadow)


def _parents_for_match(node: DomNode, cross_shadow: bool) -> List[DomNode]:
    out = []
    for ancestor in node.ancestors():
        if ancestor.tag == "#shadow":
            if not cross_shadow:
                break
            continue
        if ancestor.tag == "html" and ancestor.parent is None:
            out.append(ancestor)
            break
        out.append(ancestor)
        if not cross_shadow and ancestor.parent is None:
            break
    return out


def query_all(root: DomNode, selector: str) -> List[DomNode]:
    """Document-order matches within root's own tree (no shadow descent)."""
    chain = parse_selector(selector)
    return [n for n in root.iter_tree() if n is not root and
            _chain_matches(n, chain, cross_shadow=False)]


def composed_query(root: DomNode, selector: str) -> List[DomNode]:
    """Rendered-order matches across open shadow roots (shadow-aware lookup)."""
    chain = parse_selector(selector)
    return [n for n in root.iter_composed() if n is not root and
            _chain_matches(n, chain, cross_shadow=True)]


# ---------------------------------------------------------------------------
# Path generation
# ---------------------------------------------------------------------------


def css_path(node: DomNode) -> str:
    """Root-to-node css path; shadow boundaries marked with ``::shadow``."""
    segments: List[str] = []
    current: Optional[DomNode] = node
    while current is not None and current.tag != "#shadow":
        segments.append(_segment_for(current))
        current = current.parent
    path = " > ".join(reversed(segments))
    root = node.tree_root()
    if root.tag == "#shadow" and root.host is not None:
        return f"{css_path(root.host)}::shadow {path}"
    return path


def _segment_for(node: DomNode) -> str:
    same_tag = [s for s in _siblings(node) if s.tag == node.tag]
    if len(same_tag) > 1:
        return f"{node.tag}:nth-of-type({_nth_of_type(node)})"
    return node.tag


def xpath_for(node: DomNode) -> str:
    """Absolute positional XPath; empty for shadow-tree nodes, which plain
    document XPath cannot address."""
    if node.tree_root().tag == "#shadow":
        return ""
    steps: List[str] = []
    current: Optional[DomNode] = node
    while current is not None:
        steps.append(f"{current.tag}[{_nth_of_type(current)}]")
        current = current.parent
    return "/" + "/".join(reversed(steps))


_XPATH_STEP_RE = re.compile(r"([a-zA-Z][\w-]*)(?:\[(\d+)\])?$")


def query_xpath(root: DomNode, xpath: str) -> List[DomNode]:
    if not xpath.startswith("/"):
        return []
    current = [root]
    steps = [s for s in xpath.split("/") if s]
    for i, step in enumerate(steps):
        match = _XPATH_STEP_RE.match(step)
        if match is None:
            return []
        tag = match.group(1).lower()
        index = int(match.group(2)) if match.group(2) else None
        nxt: List[DomNode] = []
        for node in current:
            if i == 0 and node.tag == tag:
                # absolute path starts at the root element itself
                candidates = [node]
            else:
                candidates = [c for c in node.element_children() if c.tag == tag]
            if index is not None:
                candidates = candidates[index - 1:index] if len(candidates) >= index else []
            nxt.extend(candidates)
        current = nxt
        if not current:
            return []
    return current
