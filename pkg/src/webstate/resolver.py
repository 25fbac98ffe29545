"""Element re-identification: deterministic interaction index plus the
cascading locator fallback.

Tier order is fixed: stable attributes (data-testid, id, name, aria-label,
href — by decreasing real-world stability), label text, sibling text, css
path (shadow-marker aware), xpath, and finally the deterministic
``data-websp-index``. Ties within a tier resolve to the first element in
document order, with the match count surfaced for audit.

This module also owns the normative interactive-element predicate used by
the indexer, the page-wide detection script, and the recording extension.
"""

import hashlib
from dataclasses import dataclass
from typing import Dict, List, Optional

from .browser import BrowserSession, ElementInfo
from .errors import IndexUnavailable, ResolutionNotFound
from .trace import SHADOW_MARKER, FramePath, LocatorBundle

WEBSP_INDEX_ATTR = "data-websp-index"

STABLE_ATTR_ORDER = ("data-testid", "id", "name", "aria-label", "href")

INTERACTIVE_ROLES = frozenset(
    {"button", "link", "checkbox", "switch", "radio", "menuitem", "tab", "option"}
)
_NATIVE_INTERACTIVE_TAGS = frozenset(
    {"button", "input", "select", "textarea", "summary"}
)

ARIA_BUNDLE_ATTRS = ("role", "aria-checked", "aria-pressed", "aria-selected",
                     "aria-label", "aria-expanded")

OUTER_HTML_EXCERPT_LIMIT = 2048

TIERS = ("stable_attr", "label_text", "sibling_text", "css_path", "xpath",
         "websp_index")


def is_interactive(tag: str, attrs: Dict[str, str]) -> bool:
    """Normative predicate: which elements count as interactive.

    Mirrored byte-for-byte in the injected index script and the recording
    extension; any change here must be replicated there.
    """
    tag = tag.lower()
    if tag == "a":
        return bool(attrs.get("href"))
    if tag in _NATIVE_INTERACTIVE_TAGS:
        return True
    tabindex = attrs.get("tabindex")
    if tabindex is not None:
        try:
            if int(tabindex) >= 0:
                return True
        except ValueError:
            pass
    if attrs.get("role", "").lower() in INTERACTIVE_ROLES:
        return True
    contenteditable = attrs.get("contenteditable")
    if contenteditable is not None and contenteditable.lower() in ("", "true"):
        return True
    return False


def build_interaction_index(session: BrowserSession) -> int:
    """(Re)assign 0-based data-websp-index over the current frame's rendered
    DOM, descending open shadow roots at their host position. Deterministic:
    an unchanged DOM always produces the identical assignment."""
    try:
        return session.run_interaction_index()
    except IndexUnavailable:
        raise
    except Exception as exc:  # script injection failures from live backends
        raise IndexUnavailable(str(exc)) from exc


# ---------------------------------------------------------------------------
# Locator bundle extraction
# ---------------------------------------------------------------------------


def normalize_text(text: Optional[str]) -> str:
    return " ".join((text or "").split())


def extract_bundle(session: BrowserSession, handle) -> LocatorBundle:
    """Build the full locator bundle for a live element, as the recorder
    captures it at interaction time."""
    info = session.element_info(handle)
    stable = {}
    for attr in STABLE_ATTR_ORDER:
        value = info.attrs.get(attr)
        if value:
            stable[attr] = value
    aria = {k: v for k in ARIA_BUNDLE_ATTRS
            if (v := info.attrs.get(k)) is not None}
    outer = info.outer_html
    websp = info.attrs.get(WEBSP_INDEX_ATTR)
    return LocatorBundle(
        tag_name=info.tag,
        stable_attrs=stable,
        outer_html_digest=hashlib.sha256(outer.encode("utf-8")).hexdigest(),
        outer_html_excerpt=outer[:OUTER_HTML_EXCERPT_LIMIT],
        css_path=info.css_path,
        xpath=info.xpath,
        label_text=normalize_text(info.label_text) or None,
        sibling_text=normalize_text(info.sibling_text) or None,
        parent_text=normalize_text(info.parent_text) or None,
        aria_attrs=aria,
        websp_index=int(websp) if websp is not None and websp.isdigit() else None,
    )


# ---------------------------------------------------------------------------
# Shadow-marker aware css query
# ---------------------------------------------------------------------------


def shadow_query(session: BrowserSession, selector: str) -> List[object]:
    """Query a selector whose segments may be separated by ``::shadow``
    markers: each intermediate match's open shadow root becomes the scope for
    the next segment. An intermediate match without an (open) shadow root
    contributes nothing."""
    segments = [seg.strip() for seg in selector.split(SHADOW_MARKER)]
    scopes: List[Optional[object]] = [None]  # None = document scope
    for depth, segment in enumerate(segments):
        if not segment:
            return []
        matches: List[object] = []
        for scope in scopes:
            if scope is None:
                matches.extend(session.query_css(segment))
            else:
                matches.extend(session.shadow_children_query(scope, segment))
        if depth == len(segments) - 1:
            return session.document_order(matches)
        scopes = [m for m in matches if session.has_shadow_root(m)]
        if not scopes:
            return []
    return []


# ---------------------------------------------------------------------------
# Cascading resolve
# ---------------------------------------------------------------------------


@dataclass
class ResolutionResult:
    element: object
    tier_used: str
    ambiguity_count: int = 1
    sanity: str = "pass"  # pass | tag_mismatch_accepted


def resolve(bundle: LocatorBundle, frame_path: FramePath,
            session: BrowserSession) -> ResolutionResult:
    """Re-identify a recorded element in the session's current frame context.

    The caller is responsible for having switched into ``frame_path`` (the
    replay engine does this); frame_path is accepted so logs can reference it.
    Raises ResolutionNotFound carrying per-tier failure reasons.
    """
    failures: Dict[str, str] = {}

    result = _stable_attr_tier(bundle, session, failures)
    if result is None:
        result = _text_tier("label_text", bundle.label_text, session, failures)
    if result is None:
        result = _text_tier("sibling_text", bundle.sibling_text, session, failures)
    if result is None:
        result = _css_path_tier(bundle, session, failures)
    if result is None:
        result = _xpath_tier(bundle, session, failures)
    if result is None:
        result = _websp_index_tier(bundle, session, failures)
    if result is None:
        raise ResolutionNotFound(failures)
    return result


def _pick_first(session, handles, tier) -> ResolutionResult:
    ordered = session.document_order(handles)
    return ResolutionResult(ordered[0], tier, ambiguity_count=len(ordered))


def _stable_attr_tier(bundle, session, failures) -> Optional[ResolutionResult]:
    if not bundle.stable_attrs:
        failures["stable_attr"] = "no stable attributes recorded"
        return None
    for attr in STABLE_ATTR_ORDER:
        value = bundle.stable_attrs.get(attr)
        if not value:
            continue
        handles = session.query_css(f'[{attr}="{value}"]', shadow_aware=True)
        if handles:
            return _pick_first(session, handles, "stable_attr")
    failures["stable_attr"] = "no stable attribute matched a live element"
    return None


def _text_tier(tier, recorded, session, failures) -> Optional[ResolutionResult]:
    if not recorded:
        failures[tier] = "not recorded"
        return None
    kind = "label" if tier == "label_text" else "sibling"
    handles = session.find_by_text(kind, normalize_text(recorded))
    if handles:
        return _pick_first(session, handles, tier)
    failures[tier] = f"no element with matching {kind} text"
    return None


def _css_path_tier(bundle, session, failures) -> Optional[ResolutionResult]:
    if not bundle.css_path:
        failures["css_path"] = "not recorded"
        return None
    try:
        handles = shadow_query(session, bundle.css_path)
    except Exception as exc:
        failures["css_path"] = f"query failed: {exc}"
        return None
    if handles:
        return _pick_first(session, handles, "css_path")
    failures["css_path"] = "path matched nothing"
    return None


def _xpath_tier(bundle, session, failures) -> Optional[ResolutionResult]:
    if not bundle.xpath:
        failures["xpath"] = "not recorded"
        return None
    handles = session.query_xpath(bundle.xpath)
    if handles:
        return _pick_first(session, handles, "xpath")
    failures["xpath"] = "xpath matched nothing"
    return None


def _websp_index_tier(bundle, session, failures) -> Optional[ResolutionResult]:
    if bundle.websp_index is None:
        failures["websp_index"] = "not recorded"
        return None
    try:
        count = build_interaction_index(session)
    except IndexUnavailable as exc:
        failures["websp_index"] = f"index unavailable: {exc}"
        return None
    if bundle.websp_index >= count:
        failures["websp_index"] = (
            f"recorded index {bundle.websp_index} out of range (count {count})")
        return None
    handles = session.query_css(
        f'[{WEBSP_INDEX_ATTR}="{bundle.websp_index}"]', shadow_aware=True)
    if not handles:
        failures["websp_index"] = "indexed element not found"
        return None
    result = _pick_first(session, handles, "websp_index")
    info = session.element_info(result.element)
    if info.tag == bundle.tag_name:
        return result
    if _roles_compatible(bundle, info):
        result.sanity = "tag_mismatch_accepted"
        return result
    failures["websp_index"] = (
        f"tag sanity failed: recorded {bundle.tag_name!r}, live {info.tag!r}")
    return None


def _role_class(tag: str, role: str, input_type: str) -> Optional[str]:
    # role-equivalent sets for index-tier tag sanity: re-renders may swap the
    # tag while keeping the widget's role. A recorded bundle does not keep the
    # input type, so any input counts as toggle-like on the recorded side.
    if tag in ("button", "a") or (tag == "div" and role == "button"):
        return "buttonish"
    if (tag == "input" and input_type in ("", "checkbox")) \
            or role in ("switch", "checkbox"):
        return "togglish"
    return None


def _roles_compatible(bundle: LocatorBundle, info: ElementInfo) -> bool:
    recorded = _role_class(bundle.tag_name, bundle.aria_attrs.get("role", ""), "")
    live = _role_class(info.tag, info.attrs.get("role", ""),
                       info.attrs.get("type", ""))
    return recorded is not None and recorded == live
