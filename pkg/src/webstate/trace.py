"""Recorded-session data types and their canonical JSON wire format.

A trace file is UTF-8 JSON with snake_case keys in a fixed order (see
_trace_to_jsonable), 2-space indentation, and a trailing newline, so
serializing the same trace twice is byte-identical. Absent optional fields are
written as null; timestamps are epoch milliseconds and only their ordering is
meaningful. Screenshots are sibling PNG files referenced by relative path.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple
from urllib.parse import urlparse

from .errors import TraceValidationError

EVENT_TYPES = ("click", "mousedown", "pointerdown", "input", "key")
STATE_VALUES = ("ON", "OFF", "UNKNOWN")
STATE_SOURCES = (
    "aria_checked",
    "aria_pressed",
    "aria_selected",
    "native_checked",
    "css_class_heuristic",
    "none",
)

SHADOW_MARKER = "::shadow"


@dataclass(frozen=True)
class ElementState:
    value: str  # ON | OFF | UNKNOWN
    source: str  # one of STATE_SOURCES; "none" iff value is UNKNOWN


@dataclass(frozen=True)
class FrameHop:
    origin: str
    frame_selector: Optional[str] = None
    index_in_parent: int = 0


@dataclass(frozen=True)
class FramePath:
    """Ordered frame descriptors, outermost first; empty means top frame."""

    hops: Tuple[FrameHop, ...] = ()

    def __init__(self, hops=()):
        object.__setattr__(self, "hops", tuple(hops))

    def is_top(self) -> bool:
        return not self.hops


@dataclass(frozen=True)
class LocatorBundle:
    """Every re-identification handle captured for one element.

    outer_html_digest is a sha256 hex digest of the full outerHTML;
    outer_html_excerpt keeps at most 2048 raw characters as a sanity-check
    aid. css_path may carry ``::shadow`` markers between segments at each
    shadow-root boundary, never leading or trailing.
    """

    tag_name: str
    stable_attrs: Dict[str, str] = field(default_factory=dict)
    outer_html_digest: str = ""
    outer_html_excerpt: str = ""
    css_path: str = ""
    xpath: str = ""
    label_text: Optional[str] = None
    sibling_text: Optional[str] = None
    parent_text: Optional[str] = None
    aria_attrs: Dict[str, str] = field(default_factory=dict)
    websp_index: Optional[int] = None

    def has_any_handle(self) -> bool:
        return bool(self.stable_attrs) or bool(self.css_path) or bool(self.xpath) \
            or self.websp_index is not None


@dataclass(frozen=True)
class RecordedEvent:
    seq: int
    event_type: str
    locator: LocatorBundle
    frame_path: FramePath = FramePath()
    state_before: Optional[ElementState] = None
    typed_text: Optional[str] = None
    timestamp_ms: int = 0
    screenshot_ref: Optional[str] = None


@dataclass(frozen=True)
class SessionTrace:
    name: str
    created_at: int
    start_url: str
    events: Tuple[RecordedEvent, ...] = ()
    screenshots_dir: Optional[str] = None

    def __init__(self, name, created_at, start_url, events=(), screenshots_dir=None):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "created_at", created_at)
        object.__setattr__(self, "start_url", start_url)
        object.__setattr__(self, "events", tuple(events))
        object.__setattr__(self, "screenshots_dir", screenshots_dir)


class StateDirective:
    """Desired ON/OFF states keyed by event seq or by a simple selector.

    Selector keys support the exact recorded css_path, ``#id``,
    ``[attr="value"]`` and ``tag[attr="value"]`` forms, matched against each
    event's recorded locator (not the live DOM).
    """

    def __init__(self, entries: Dict[str, str]):
        normalized = {}
        for key, value in entries.items():
            if value not in ("ON", "OFF"):
                raise ValueError(f"directive value must be ON or OFF, got {value!r}")
            normalized[str(key)] = value
        self.entries = normalized

    def __eq__(self, other):
        return isinstance(other, StateDirective) and self.entries == other.entries

    def __repr__(self):
        return f"StateDirective({self.entries!r})"

    def desired_for(self, event: RecordedEvent) -> Optional[str]:
        for key, value in self.entries.items():
            if _directive_key_matches(key, event):
                return value
        return None

    def validate_against(self, trace: SessionTrace) -> None:
        unmatched = [
            key for key in self.entries
            if not any(_directive_key_matches(key, ev) for ev in trace.events)
        ]
        if unmatched:
            raise ValueError(
                "directive keys match no trace event: " + ", ".join(sorted(unmatched))
            )


def _directive_key_matches(key: str, event: RecordedEvent) -> bool:
    if key.isdigit():
        return event.seq == int(key)
    loc = event.locator
    if key == loc.css_path and key:
        return True
    if key.startswith("#"):
        return loc.stable_attrs.get("id") == key[1:]
    # tag[attr="value"] or [attr="value"]
    if "[" in key and key.endswith("]"):
        tag, _, rest = key.partition("[")
        if tag and tag != loc.tag_name:
            return False
        inner = rest[:-1]
        attr, _, raw = inner.partition("=")
        value = raw.strip("\"'")
        if not attr:
            return False
        candidates = dict(loc.stable_attrs)
        candidates.update(loc.aria_attrs)
        return candidates.get(attr) == value
    return False


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def _state_to_jsonable(state: Optional[ElementState]):
    if state is None:
        return None
    return {"value": state.value, "source": state.source}


def _frame_path_to_jsonable(path: FramePath):
    return [
        {
            "origin": hop.origin,
            "frame_selector": hop.frame_selector,
            "index_in_parent": hop.index_in_parent,
        }
        for hop in path.hops
    ]


def _locator_to_jsonable(loc: LocatorBundle):
    return {
        "stable_attrs": {k: loc.stable_attrs[k] for k in sorted(loc.stable_attrs)},
        "tag_name": loc.tag_name,
        "outer_html_digest": loc.outer_html_digest,
        "outer_html_excerpt": loc.outer_html_excerpt,
        "css_path": loc.css_path,
        "xpath": loc.xpath,
        "label_text": loc.label_text,
        "sibling_text": loc.sibling_text,
        "parent_text": loc.parent_text,
        "aria_attrs": {k: loc.aria_attrs[k] for k in sorted(loc.aria_attrs)},
        "websp_index": loc.websp_index,
    }


def _trace_to_jsonable(trace: SessionTrace):
    return {
        "name": trace.name,
        "created_at": trace.created_at,
        "start_url": trace.start_url,
        "events": [
            {
                "seq": ev.seq,
                "event_type": ev.event_type,
                "frame_path": _frame_path_to_jsonable(ev.frame_path),
                "locator": _locator_to_jsonable(ev.locator),
                "state_before": _state_to_jsonable(ev.state_before),
                "typed_text": ev.typed_text,
                "timestamp_ms": ev.timestamp_ms,
                "screenshot_ref": ev.screenshot_ref,
            }
            for ev in trace.events
        ],
        "screenshots_dir": trace.screenshots_dir,
    }


def check_trace(trace: SessionTrace):
    """Return (json_pointer, message) tuples for every invariant violation."""
    violations = []
    if not isinstance(trace.name, str) or not trace.name:
        violations.append(("/name", "name must be a non-empty string"))
    parsed = urlparse(trace.start_url if isinstance(trace.start_url, str) else "")
    if not (parsed.scheme and parsed.netloc):
        violations.append(("/start_url", "start_url must be an absolute URL"))
    last_seq = None
    for i, ev in enumerate(trace.events):
        base = f"/events/{i}"
        if ev.event_type not in EVENT_TYPES:
            violations.append(
                (f"{base}/event_type",
                 f"unknown event_type {ev.event_type!r}; allowed: {', '.join(EVENT_TYPES)}")
            )
        if last_seq is not None and ev.seq <= last_seq:
            violations.append(
                (f"{base}/seq", f"seq {ev.seq} not strictly increasing at seq {ev.seq}")
            )
        last_seq = ev.seq
        if (ev.typed_text is not None) != (ev.event_type == "input"):
            violations.append(
                (f"{base}/typed_text",
                 "typed_text must be present exactly when event_type is 'input'")
            )
        if not ev.locator.has_any_handle():
            violations.append(
                (f"{base}/locator",
                 f"event seq {ev.seq} has no usable locator handle "
                 "(need stable_attrs, css_path, xpath, or websp_index)")
            )
        violations.extend(
            (f"{base}/locator/css_path", msg)
            for msg in _check_shadow_markers(ev.locator.css_path)
        )
        if ev.locator.websp_index is not None and ev.locator.websp_index < 0:
            violations.append(
                (f"{base}/locator/websp_index", "websp_index must be >= 0")
            )
        if ev.state_before is not None:
            st = ev.state_before
            if st.value not in STATE_VALUES:
                violations.append((f"{base}/state_before/value", f"bad value {st.value!r}"))
            if st.source not in STATE_SOURCES:
                violations.append((f"{base}/state_before/source", f"bad source {st.source!r}"))
            if (st.value == "UNKNOWN") != (st.source == "none"):
                violations.append(
                    (f"{base}/state_before", "value UNKNOWN exactly when source is 'none'")
                )
    return violations


def _check_shadow_markers(css_path: str):
    if not css_path:
        return
    if css_path.startswith(SHADOW_MARKER):
        yield "shadow marker may not lead the path"
    if css_path.endswith(SHADOW_MARKER):
        yield "shadow marker may not trail the path"
    if SHADOW_MARKER + SHADOW_MARKER in css_path:
        yield "doubled shadow marker"


def serialize_trace(trace: SessionTrace) -> bytes:
    violations = check_trace(trace)
    if violations:
        raise TraceValidationError(violations)
    text = json.dumps(_trace_to_jsonable(trace), ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Validation / deserialization
# ---------------------------------------------------------------------------

_TOP_KEYS = ("name", "created_at", "start_url", "events", "screenshots_dir")
_EVENT_KEYS = ("seq", "event_type", "frame_path", "locator", "state_before",
               "typed_text", "timestamp_ms", "screenshot_ref")
_LOCATOR_KEYS = ("stable_attrs", "tag_name", "outer_html_digest", "outer_html_excerpt",
                 "css_path", "xpath", "label_text", "sibling_text", "parent_text",
                 "aria_attrs", "websp_index")
_HOP_KEYS = ("origin", "frame_selector", "index_in_parent")


def _require_keys(obj, allowed, required, pointer, violations):
    for key in obj:
        if key not in allowed:
            violations.append((f"{pointer}/{key}", "unknown key"))
    for key in required:
        if key not in obj:
            violations.append((f"{pointer}/{key}", "missing required key"))


def _parse_locator(obj, pointer, violations) -> LocatorBundle:
    _require_keys(obj, _LOCATOR_KEYS, ("tag_name",), pointer, violations)
    stable = obj.get("stable_attrs") or {}
    aria = obj.get("aria_attrs") or {}
    for name, mapping in (("stable_attrs", stable), ("aria_attrs", aria)):
        if not isinstance(mapping, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in mapping.items()
        ):
            violations.append((f"{pointer}/{name}", "must be a string->string map"))
    websp = obj.get("websp_index")
    if websp is not None and (not isinstance(websp, int) or isinstance(websp, bool)):
        violations.append((f"{pointer}/websp_index", "must be an integer or null"))
        websp = None
    return LocatorBundle(
        tag_name=str(obj.get("tag_name", "")),
        stable_attrs=dict(stable) if isinstance(stable, dict) else {},
        outer_html_digest=str(obj.get("outer_html_digest") or ""),
        outer_html_excerpt=str(obj.get("outer_html_excerpt") or ""),
        css_path=str(obj.get("css_path") or ""),
        xpath=str(obj.get("xpath") or ""),
        label_text=obj.get("label_text"),
        sibling_text=obj.get("sibling_text"),
        parent_text=obj.get("parent_text"),
        aria_attrs=dict(aria) if isinstance(aria, dict) else {},
        websp_index=websp,
    )


def _parse_frame_path(value, pointer, violations) -> FramePath:
    if value is None:
        return FramePath()
    if not isinstance(value, list):
        violations.append((pointer, "frame_path must be a list"))
        return FramePath()
    hops = []
    for j, hop in enumerate(value):
        if not isinstance(hop, dict):
            violations.append((f"{pointer}/{j}", "hop must be an object"))
            continue
        _require_keys(hop, _HOP_KEYS, ("origin",), f"{pointer}/{j}", violations)
        hops.append(FrameHop(
            origin=str(hop.get("origin", "")),
            frame_selector=hop.get("frame_selector"),
            index_in_parent=int(hop.get("index_in_parent", 0)),
        ))
    return FramePath(hops)


def _parse_event(obj, index, violations) -> Optional[RecordedEvent]:
    pointer = f"/events/{index}"
    if not isinstance(obj, dict):
        violations.append((pointer, "event must be an object"))
        return None
    _require_keys(obj, _EVENT_KEYS, ("seq", "event_type", "locator"), pointer, violations)
    locator_obj = obj.get("locator")
    if not isinstance(locator_obj, dict):
        violations.append((f"{pointer}/locator", "locator must be an object"))
        return None
    state = None
    state_obj = obj.get("state_before")
    if state_obj is not None:
        if not isinstance(state_obj, dict):
            violations.append((f"{pointer}/state_before", "must be an object or null"))
        else:
            state = ElementState(
                value=str(state_obj.get("value", "")),
                source=str(state_obj.get("source", "")),
            )
    seq = obj.get("seq")
    if not isinstance(seq, int) or isinstance(seq, bool):
        violations.append((f"{pointer}/seq", "seq must be an integer"))
        return None
    return RecordedEvent(
        seq=seq,
        event_type=str(obj.get("event_type", "")),
        locator=_parse_locator(locator_obj, f"{pointer}/locator", violations),
        frame_path=_parse_frame_path(obj.get("frame_path"), f"{pointer}/frame_path", violations),
        state_before=state,
        typed_text=obj.get("typed_text"),
        timestamp_ms=int(obj.get("timestamp_ms") or 0),
        screenshot_ref=obj.get("screenshot_ref"),
    )


def validate_trace(data: bytes) -> SessionTrace:
    """Parse and validate trace bytes; raises TraceValidationError listing
    every schema violation with its JSON-pointer path."""
    try:
        obj = json.loads(data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise TraceValidationError([("", f"malformed JSON: {exc}")]) from exc
    if not isinstance(obj, dict):
        raise TraceValidationError([("", "top level must be an object")])

    violations = []
    _require_keys(obj, _TOP_KEYS, ("name", "created_at", "start_url", "events"),
                  "", violations)
    events_obj = obj.get("events")
    events = []
    if events_obj is not None and not isinstance(events_obj, list):
        violations.append(("/events", "events must be a list"))
    elif isinstance(events_obj, list):
        for i, ev_obj in enumerate(events_obj):
            ev = _parse_event(ev_obj, i, violations)
            if ev is not None:
                events.append(ev)

    trace = SessionTrace(
        name=str(obj.get("name") or ""),
        created_at=int(obj.get("created_at") or 0),
        start_url=str(obj.get("start_url") or ""),
        events=events,
        screenshots_dir=obj.get("screenshots_dir"),
    )
    violations.extend(check_trace(trace))
    if violations:
        raise TraceValidationError(violations)
    return trace


def load_trace(path) -> SessionTrace:
    with open(path, "rb") as fh:
        return validate_trace(fh.read())


def save_trace(trace: SessionTrace, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize_trace(trace))
