#!/usr/bin/env python3
"""Regenerates the pre-recorded fixture traces under
src/webstate/fixtures/data/traces/.

Drives the in-process fixture browser the way the recording extension drives
a real one: the interaction index is kept fresh, a full locator bundle is
extracted per event at event time, and detected element states are stored as
state_before. Deterministic: fixed created_at/timestamps, throwaway profiles.
"""

import os
import sys
import tempfile

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from webstate.clock import FakeClock
from webstate.dom import FixtureSession
from webstate.replay import detect_state_from_info
from webstate.resolver import build_interaction_index, extract_bundle
from webstate.trace import (FrameHop, FramePath, RecordedEvent, SessionTrace,
                            save_trace)

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "webstate",
                       "fixtures", "data", "traces")
CREATED_AT = 1765000000000


class TraceBuilder:
    def __init__(self, session: FixtureSession, name: str, start_url: str):
        self.session = session
        self.name = name
        self.start_url = start_url
        self.events = []

    def _record(self, handle, event_type, frame_path=FramePath(),
                typed_text=None):
        build_interaction_index(self.session)
        bundle = extract_bundle(self.session, handle)
        state = detect_state_from_info(self.session.element_info(handle))
        seq = len(self.events) + 1
        self.events.append(RecordedEvent(
            seq=seq,
            event_type=event_type,
            locator=bundle,
            frame_path=frame_path,
            state_before=None if state.value == "UNKNOWN" else state,
            typed_text=typed_text,
            timestamp_ms=1000 * seq,
        ))

    def click(self, selector, frame_path=FramePath()):
        handle = self.session.query_css(selector, shadow_aware=True)[0]
        self._record(handle, "click", frame_path)
        self.session.native_click(handle)
        return handle

    def type_text(self, selector, text, frame_path=FramePath()):
        handle = self.session.query_css(selector, shadow_aware=True)[0]
        self._record(handle, "input", frame_path, typed_text=text)
        self.session.clear_and_type(handle, text)
        return handle

    def save(self):
        trace = SessionTrace(name=self.name, created_at=CREATED_AT,
                             start_url=self.start_url, events=self.events)
        path = os.path.join(OUT_DIR, f"{self.name}.json")
        save_trace(trace, os.path.abspath(path))
        print(f"wrote {path} ({len(self.events)} events)")
        return trace


def fresh_session() -> FixtureSession:
    return FixtureSession(tempfile.mkdtemp(prefix="trace-author-"),
                          clock=FakeClock())


def build_login_trace():
    session = fresh_session()
    session.navigate("https://fixture-a.local/login")
    builder = TraceBuilder(session, "site-a-login",
                           "https://fixture-a.local/login")
    builder.click('[data-testid="login-user"]')
    builder.type_text('[data-testid="login-user"]', "fixture-user")
    builder.type_text('[data-testid="login-pass"]', "fixture-pass")
    builder.click('[data-testid="login-submit"]')
    assert session.store.get("site-a", "auth") is True
    builder.save()


def build_settings_trace(name, toggle_testid):
    session = fresh_session()
    session.store.set("site-a", "auth", True)
    session.navigate("https://fixture-a.local/settings")
    builder = TraceBuilder(session, name, "https://fixture-a.local/settings")
    builder.click(f'[data-testid="{toggle_testid}"]')
    builder.click('[data-testid="save-settings"]')
    builder.save()


def build_quick_trace():
    session = fresh_session()
    session.navigate("https://fixture-a.local/quick")
    builder = TraceBuilder(session, "site-a-quick-digest",
                           "https://fixture-a.local/quick")
    builder.click('[data-testid="quick-digest"]')
    builder.save()


def build_profile_trace(name, needle):
    session = fresh_session()
    # second load: recorded attribute nonces never match a fresh profile's
    # first-load page, which is what exercises the index fallback
    session.navigate("https://fixture-b.local/profile")
    session.navigate("https://fixture-b.local/profile")
    builder = TraceBuilder(session, name, "https://fixture-b.local/profile")
    handle = next(h for h in session.query_css("[role=switch]")
                  if needle in h.full_text())
    builder._record(handle, "click")
    session.native_click(handle)
    builder.save()


def build_iframe_trace():
    session = fresh_session()
    session.navigate("https://fixture-unit.local/iframe")
    builder = TraceBuilder(session, "unit-iframe",
                           "https://fixture-unit.local/iframe")
    builder.click('[data-testid="host-button"]')
    hop = FrameHop(origin="https://fixture-unit.local",
                   frame_selector="#child-frame", index_in_parent=0)
    assert session.switch_into_frame("#child-frame", 0)
    builder.click('[data-testid="inner-button"]', frame_path=FramePath([hop]))
    session.switch_to_top()
    builder.save()


def build_popup_trace():
    session = fresh_session()
    session.navigate("https://fixture-unit.local/popup")
    builder = TraceBuilder(session, "unit-popup-oauth",
                           "https://fixture-unit.local/popup")
    builder.click('[data-testid="oauth-start"]')
    popup = session.window_handles()[-1]
    session.switch_window(popup)
    hop = FrameHop(origin="https://auth-provider.local", frame_selector=None,
                   index_in_parent=-1)  # window-context hop
    builder.click('[data-testid="approve"]', frame_path=FramePath([hop]))
    assert session.store.get("unit", "auth") is True
    builder.save()


def build_broken_login_trace():
    """A login trace whose only event points at an element that no longer
    exists anywhere; used to exercise the init_failed path."""
    session = fresh_session()
    session.navigate("https://fixture-a.local/login")
    builder = TraceBuilder(session, "site-a-broken-login",
                           "https://fixture-a.local/login")
    builder.click('[data-testid="login-submit"]')
    event = builder.events[0]
    from dataclasses import replace
    broken = replace(
        event.locator,
        stable_attrs={"data-testid": "login-gone"},
        css_path="html > body > div:nth-of-type(9) > button",
        xpath="/html/body/div[9]/button",
        label_text="No such control",
        sibling_text=None,
        parent_text=None,
        websp_index=None,
    )
    builder.events[0] = replace(event, locator=broken)
    builder.save()


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    build_login_trace()
    build_settings_trace("site-a-notifications-email", "email-toggle")
    build_settings_trace("site-a-notifications-promo", "promo-toggle")
    build_quick_trace()
    build_profile_trace("site-b-profile-public", "Public profile")
    build_profile_trace("site-b-profile-indexing", "Search engine indexing")
    build_iframe_trace()
    build_popup_trace()
    build_broken_login_trace()


if __name__ == "__main__":
    main()
