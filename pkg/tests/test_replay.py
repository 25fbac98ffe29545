"""Replay engine: state detection, conditional reconciliation, click
strategies, context switching, and full trace replays."""

import pytest

from webstate.clock import FakeClock
from webstate.errors import (ContextError, InteractionFailed,
                             StateVerificationFailed)
from webstate.fixtures import trace_path
from webstate.replay import ReplayEngine, detect_state_from_info
from webstate.trace import FrameHop, FramePath, StateDirective, load_trace


@pytest.fixture
def engine_factory(session_factory):
    def make(session=None):
        session = session or session_factory()
        return ReplayEngine(session, clock=FakeClock())
    return make


class TestDetectState:
    def test_aria_checked_wins(self, session, engine_factory):
        session.navigate("https://fixture-a.local/quick")
        engine = engine_factory(session)
        toggle = session.query_css('[data-testid="quick-digest"]')[0]
        state = engine.detect_state(toggle)
        assert (state.value, state.source) == ("ON", "aria_checked")

    def test_css_class_heuristic(self):
        from webstate.browser import ElementInfo
        info = ElementInfo(tag="span", attrs={"class": "chip a-switch-active"})
        state = detect_state_from_info(info)
        assert (state.value, state.source) == ("ON", "css_class_heuristic")
        info = ElementInfo(tag="button", attrs={"class": "a-disabled"})
        assert detect_state_from_info(info).value == "OFF"

    def test_extensible_class_map(self, session, engine_factory):
        from webstate.browser import ElementInfo
        from webstate.replay import detect_state_from_info
        info = ElementInfo(tag="div", attrs={"class": "lever-down"})
        state = detect_state_from_info(info, {"lever-down": "OFF"})
        assert (state.value, state.source) == ("OFF", "css_class_heuristic")

    def test_plain_div_unknown(self):
        from webstate.browser import ElementInfo
        state = detect_state_from_info(ElementInfo(tag="div"))
        assert (state.value, state.source) == ("UNKNOWN", "none")

    def test_native_checked(self, session, engine_factory):
        session.navigate("https://fixture-c.local/")
        engine = engine_factory(session)
        radio = session.query_css("#mkt-accept")[0]
        assert engine.detect_state(radio).source == "native_checked"


class TestReconcile:
    def test_matching_state_skips_interaction(self, session, engine_factory):
        session.navigate("https://fixture-a.local/quick")
        engine = engine_factory(session)
        toggle = session.query_css('[data-testid="quick-digest"]')[0]
        acted, final = engine.reconcile_state(toggle, "ON")
        assert acted is False and final.value == "ON"

    def test_mismatch_clicks_once_and_verifies(self, session, engine_factory):
        session.navigate("https://fixture-a.local/quick")
        engine = engine_factory(session)
        toggle = session.query_css('[data-testid="quick-digest"]')[0]
        acted, final = engine.reconcile_state(toggle, "OFF")
        assert acted is True and final.value == "OFF"

    def test_stuck_toggle_fails_after_retry(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/stuck")
        engine = engine_factory(session)
        stuck = session.query_css('[data-testid="stuck-toggle"]')[0]
        with pytest.raises(StateVerificationFailed):
            engine.reconcile_state(stuck, "OFF")
        assert stuck.attrs["data-fx-stuck-count"] == "2"  # exactly one retry


class TestExecuteInteraction:
    def test_plain_button_native(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/pointer")
        engine = engine_factory(session)
        plain = session.query_css('[data-testid="plain-button"]')[0]
        assert engine.execute_interaction(plain, "click") == "native"

    def test_overlayed_button_script_injected(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/overlay")
        engine = engine_factory(session)
        covered = session.query_css('[data-testid="covered-button"]')[0]
        assert engine.execute_interaction(covered, "click") == "script_injected"

    def test_pointer_only_element_synthesized(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/pointer")
        engine = engine_factory(session)
        widget = session.query_css('[data-testid="pointer-widget"]')[0]
        assert engine.execute_interaction(widget, "click") == "synthesized_pointer"
        assert engine.detect_state(widget).value == "ON"

    def test_inert_element_raises(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/dupes")
        engine = engine_factory(session)
        # re-clicking an already-focused label-less button produces no signal
        button = session.query_css("button")[0]
        engine.execute_interaction(button, "click")
        with pytest.raises(InteractionFailed):
            engine.execute_interaction(button, "click")


class TestSwitchContext:
    def test_empty_path_is_top_frame(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/iframe")
        engine = engine_factory(session)
        assert session.switch_into_frame("#child-frame", 0)
        engine.switch_context(FramePath(), session.current_window(), 0.0)
        assert session.query_css('[data-testid="host-button"]')

    def test_iframe_hop(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/iframe")
        engine = engine_factory(session)
        hop = FrameHop(origin="https://fixture-unit.local",
                       frame_selector="#child-frame", index_in_parent=0)
        engine.switch_context(FramePath([hop]), session.current_window(), 0.0)
        assert session.query_css('[data-testid="inner-button"]')

    def test_unresolvable_hop_raises_with_index(self, session, engine_factory):
        session.navigate("https://fixture-unit.local/iframe")
        engine = engine_factory(session)
        hop = FrameHop(origin="x", frame_selector="#no-such-frame",
                       index_in_parent=0)
        with pytest.raises(ContextError) as excinfo:
            engine.switch_context(FramePath([hop]), session.current_window(), 0.0)
        assert excinfo.value.hop_index == 0

    def test_stale_window_not_treated_as_oauth_popup(self, session_factory):
        """The newest-window heuristic only fires for windows that appeared
        within the window span after the previous interaction."""
        clock = FakeClock()
        session = session_factory(clock=clock)
        engine = ReplayEngine(session, clock=clock)
        session.navigate("https://fixture-unit.local/popup")
        primary = session.current_window()
        session.open_window("https://auth-provider.local/approve")
        clock.advance(30.0)  # popup is long stale by the next event
        hop = FrameHop(origin="https://auth-provider.local",
                       frame_selector=None, index_in_parent=-1)
        engine.switch_context(FramePath([hop]), primary,
                              last_interaction_at=clock.now() - 30.0)
        assert session.current_window() == primary

    def test_fresh_window_with_matching_origin_gets_focus(self, session_factory):
        clock = FakeClock()
        session = session_factory(clock=clock)
        engine = ReplayEngine(session, clock=clock)
        session.navigate("https://fixture-unit.local/popup")
        primary = session.current_window()
        popup = session.open_window("https://auth-provider.local/approve")
        hop = FrameHop(origin="https://auth-provider.local",
                       frame_selector=None, index_in_parent=-1)
        engine.switch_context(FramePath([hop]), primary,
                              last_interaction_at=clock.now())
        assert session.current_window() == popup


class TestFullReplay:
    def test_login_trace_four_events_and_marker(self, session, engine_factory):
        engine = engine_factory(session)
        trace = load_trace(trace_path("site-a-login"))
        report = engine.replay(trace, None)
        assert report.outcome == "success"
        assert report.events_total == report.events_executed == 4
        session.navigate("https://fixture-a.local/")
        assert session.query_css("#account-badge")  # logged-in marker

    def test_empty_trace_success(self, session, engine_factory):
        from webstate.trace import SessionTrace
        engine = engine_factory(session)
        trace = SessionTrace(name="empty", created_at=0,
                             start_url="https://fixture-a.local/")
        report = engine.replay(trace, None)
        assert report.outcome == "success" and report.events_executed == 0

    def test_directive_skips_matching_toggle(self, session, engine_factory):
        engine = engine_factory(session)
        trace = load_trace(trace_path("site-a-quick-digest"))
        report = engine.replay(trace, StateDirective({"1": "ON"}))
        assert report.events_skipped_state_match == 1
        assert report.events_executed == 0

    def test_replay_idempotence_with_save_gate(self, session, engine_factory):
        engine = engine_factory(session)
        session.store.set("site-a", "auth", True)
        trace = load_trace(trace_path("site-a-notifications-email"))
        directive = StateDirective({
            '[data-testid="email-toggle"]': "OFF",
            '[data-testid="save-settings"]': "OFF",
        })
        first = engine.replay(trace, directive)
        assert first.outcome == "success"
        assert first.events_executed == 2  # toggle + save commit
        second = engine.replay(trace, directive)
        assert second.events_executed == 0
        assert second.events_skipped_state_match == 2
        assert session.store.get("site-a", "email_notifications") == "OFF"

    def test_single_recording_drives_both_states(self, session_factory):
        trace = load_trace(trace_path("site-b-profile-public"))
        for desired in ("OFF", "ON", "OFF"):
            session = session_factory()
            engine = ReplayEngine(session, clock=FakeClock())
            report = engine.replay(trace, StateDirective({"1": desired}))
            assert report.outcome == "success"
            assert session.store.get("site-b", "public_profile") == desired

    def test_popup_trace_switches_windows(self, session, engine_factory):
        engine = engine_factory(session)
        trace = load_trace(trace_path("unit-popup-oauth"))
        report = engine.replay(trace, None)
        assert report.outcome == "success"
        assert session.store.get("unit", "auth") is True

    def test_iframe_trace(self, session, engine_factory):
        engine = engine_factory(session)
        trace = load_trace(trace_path("unit-iframe"))
        report = engine.replay(trace, None)
        assert report.outcome == "success"
        assert report.events_executed == 2

    def test_unresolvable_event_aborts_failed_with_accounting(
            self, session, engine_factory):
        engine = engine_factory(session)
        trace = load_trace(trace_path("site-a-broken-login"))
        report = engine.replay(trace, None)
        assert report.outcome == "failed"
        assert report.events_executed == 0
        assert report.events_failed == 1
        assert report.events_total == (report.events_executed
                                       + report.events_skipped_state_match
                                       + report.events_failed)

    def test_stuck_toggle_event_records_failure(self, session, engine_factory):
        from webstate.resolver import build_interaction_index, extract_bundle
        from webstate.trace import RecordedEvent, SessionTrace
        session.navigate("https://fixture-unit.local/stuck")
        build_interaction_index(session)
        stuck = session.query_css('[data-testid="stuck-toggle"]')[0]
        bundle = extract_bundle(session, stuck)
        trace = SessionTrace(
            name="stuck", created_at=0,
            start_url="https://fixture-unit.local/stuck",
            events=[RecordedEvent(seq=1, event_type="click", locator=bundle)])
        engine = engine_factory(session)
        report = engine.replay(trace, StateDirective({"1": "OFF"}))
        assert report.outcome == "partial"
        assert report.per_event[0].failed
        assert "StateVerificationFailed" in report.per_event[0].failure_reason

    def test_report_accounting_identity(self, session, engine_factory):
        engine = engine_factory(session)
        session.store.set("site-a", "auth", True)
        trace = load_trace(trace_path("site-a-notifications-promo"))
        directive = StateDirective({
            '[data-testid="promo-toggle"]': "ON",
            '[data-testid="save-settings"]': "OFF",
        })
        report = engine.replay(trace, directive)
        assert report.events_total == (report.events_executed
                                       + report.events_skipped_state_match
                                       + report.events_failed)
