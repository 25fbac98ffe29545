import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from webstate.clock import FakeClock
from webstate.dom import FixtureSession
from webstate.trace import (ElementState, FrameHop, FramePath, LocatorBundle,
                            RecordedEvent, SessionTrace)


@pytest.fixture
def clock():
    return FakeClock()


@pytest.fixture
def session_factory(tmp_path):
    """Fresh fixture browser sessions, each with its own profile dir."""
    counter = {"n": 0}

    def make(color_scheme="light", clock=None, profile=None):
        counter["n"] += 1
        profile_dir = profile or str(tmp_path / f"profile-{counter['n']}")
        return FixtureSession(profile_dir, color_scheme=color_scheme,
                              clock=clock or FakeClock())

    return make


@pytest.fixture
def session(session_factory):
    return session_factory()


# ---------------------------------------------------------------------------
# Hypothesis strategies for random valid traces
# ---------------------------------------------------------------------------

_name = st.text(alphabet="abcdefghij-_ 0123456789", min_size=1, max_size=20)
_attr_value = st.text(alphabet="abcdefgh0123456789-", min_size=1, max_size=12)

_states = st.one_of(
    st.none(),
    st.builds(ElementState,
              value=st.sampled_from(["ON", "OFF"]),
              source=st.sampled_from(["aria_checked", "aria_pressed",
                                      "aria_selected", "native_checked",
                                      "css_class_heuristic"])),
    st.just(ElementState("UNKNOWN", "none")),
)

_hops = st.lists(
    st.builds(FrameHop,
              origin=st.sampled_from(["https://a.local", "https://b.local"]),
              frame_selector=st.one_of(st.none(), st.just("#frame")),
              index_in_parent=st.integers(min_value=-1, max_value=3)),
    max_size=2).map(FramePath)


@st.composite
def locator_bundles(draw):
    stable = draw(st.dictionaries(
        st.sampled_from(["data-testid", "id", "name", "aria-label", "href"]),
        _attr_value, max_size=3))
    css_path = draw(st.sampled_from(
        ["", "html > body > button",
         "html > body > my-widget::shadow div > button"]))
    xpath = draw(st.sampled_from(["", "/html/body/button[1]"]))
    websp = draw(st.one_of(st.none(), st.integers(min_value=0, max_value=40)))
    if not (stable or css_path or xpath or websp is not None):
        websp = draw(st.integers(min_value=0, max_value=40))
    return LocatorBundle(
        tag_name=draw(st.sampled_from(["button", "a", "input", "div"])),
        stable_attrs=stable,
        outer_html_digest=draw(_attr_value),
        outer_html_excerpt=draw(st.text(max_size=40)),
        css_path=css_path,
        xpath=xpath,
        label_text=draw(st.one_of(st.none(), _name)),
        sibling_text=draw(st.one_of(st.none(), _name)),
        parent_text=draw(st.one_of(st.none(), _name)),
        aria_attrs=draw(st.dictionaries(
            st.sampled_from(["role", "aria-checked", "aria-pressed"]),
            _attr_value, max_size=2)),
        websp_index=websp,
    )


@st.composite
def session_traces(draw):
    n_events = draw(st.integers(min_value=0, max_value=6))
    events = []
    seq = 0
    for _ in range(n_events):
        seq += draw(st.integers(min_value=1, max_value=3))
        event_type = draw(st.sampled_from(
            ["click", "mousedown", "pointerdown", "input", "key"]))
        events.append(RecordedEvent(
            seq=seq,
            event_type=event_type,
            locator=draw(locator_bundles()),
            frame_path=draw(_hops),
            state_before=draw(_states),
            typed_text=draw(st.text(max_size=16)) if event_type == "input"
            else None,
            timestamp_ms=seq * 250,
            screenshot_ref=draw(st.one_of(st.none(),
                                          st.just(f"shots/{seq}.png"))),
        ))
    return SessionTrace(
        name=draw(_name),
        created_at=draw(st.integers(min_value=0, max_value=2 ** 40)),
        start_url=draw(st.sampled_from(
            ["https://fixture-a.local/", "https://example.org/x?y=1"])),
        events=events,
        screenshots_dir=draw(st.one_of(st.none(), st.just("shots"))),
    )
