"""Trace replay against a live browser session.

Replays each recorded event by switching into its frame/window context,
re-resolving the target through the cascading locator fallback, and executing
the interaction through a cascade of click strategies until the page visibly
registers it. Stateful elements covered by a directive are reconciled
conditionally: the interaction is skipped when the detected state already
matches the desired one, and verified afterwards otherwise — one recording
serves both desired states.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .browser import BrowserSession, ElementInfo
from .clock import SystemClock
from .errors import (ClickIntercepted, ContextError, InteractionFailed,
                     ResolutionNotFound, StateVerificationFailed)
from .resolver import resolve
from .trace import (ElementState, FramePath, RecordedEvent, SessionTrace,
                    StateDirective)

logger = logging.getLogger(__name__)

# how long the engine watches for an interaction-registered signal per strategy
INTERACTION_SIGNAL_TIMEOUT_S = 0.5
RESOLUTION_RETRIES = 3
RESOLUTION_BACKOFF_S = 1.0
POPUP_WINDOW_S = 5.0

CLICK_STRATEGIES = ("native", "script_injected", "synthesized_pointer")

# default class -> state map for CSS-class state heuristics; extensible via
# ReplayEngine(state_classes=...)
DEFAULT_STATE_CLASSES = {
    "a-switch-active": "ON",
    "a-disabled": "OFF",
}


@dataclass
class EventOutcome:
    seq: int
    tier_used: Optional[str] = None
    click_strategy: Optional[str] = None
    state_before: Optional[ElementState] = None
    state_after: Optional[ElementState] = None
    verified: bool = True
    skipped_state_match: bool = False
    failed: bool = False
    failure_reason: Optional[str] = None
    ambiguity_count: int = 1

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "tier_used": self.tier_used,
            "click_strategy": self.click_strategy,
            "state_before": None if self.state_before is None else
            {"value": self.state_before.value, "source": self.state_before.source},
            "state_after": None if self.state_after is None else
            {"value": self.state_after.value, "source": self.state_after.source},
            "verified": self.verified,
            "skipped_state_match": self.skipped_state_match,
            "failed": self.failed,
            "failure_reason": self.failure_reason,
            "ambiguity_count": self.ambiguity_count,
        }


@dataclass
class ReplayReport:
    events_total: int = 0
    events_executed: int = 0
    events_skipped_state_match: int = 0
    per_event: List[EventOutcome] = field(default_factory=list)
    outcome: str = "success"  # success | partial | failed

    @property
    def events_failed(self) -> int:
        return sum(1 for ev in self.per_event if ev.failed)

    def to_json(self) -> dict:
        return {
            "events_total": self.events_total,
            "events_executed": self.events_executed,
            "events_skipped_state_match": self.events_skipped_state_match,
            "events_failed": self.events_failed,
            "outcome": self.outcome,
            "per_event": [ev.to_json() for ev in self.per_event],
        }

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")


# ---------------------------------------------------------------------------
# Element state detection / reconciliation
# ---------------------------------------------------------------------------


def detect_state_from_info(info: ElementInfo,
                           state_classes: Optional[Dict[str, str]] = None
                           ) -> ElementState:
    """ARIA attributes first, then the native checked property, then CSS-class
    heuristics; the first conclusive source wins."""
    for attr, source in (("aria-checked", "aria_checked"),
                         ("aria-pressed", "aria_pressed"),
                         ("aria-selected", "aria_selected")):
        value = info.attrs.get(attr)
        if value in ("true", "false"):
            return ElementState("ON" if value == "true" else "OFF", source)
    if info.tag == "input" and info.attrs.get("type") in ("checkbox", "radio"):
        return ElementState("ON" if info.checked else "OFF", "native_checked")
    classes = (info.attrs.get("class") or "").split()
    for cls, state in (state_classes or DEFAULT_STATE_CLASSES).items():
        if cls in classes:
            return ElementState(state, "css_class_heuristic")
    return ElementState("UNKNOWN", "none")


def execute_interaction(session: BrowserSession, handle, event_type: str) -> str:
    """Click cascade: native driver click, script-injected click, then a
    synthesized pointer-event sequence; stops at the first strategy after
    which the page registers the interaction (a DOM change near the target,
    an attribute/state change on it, navigation, or a focus change within the
    signal window)."""
    if event_type == "input":
        raise ValueError("typed input goes through replay_event, not clicks")
    attempts = (
        ("native", session.native_click),
        ("script_injected", session.script_click),
        ("synthesized_pointer", session.pointer_sequence),
    )
    last_error = None
    for name, action in attempts:
        token = session.change_token()
        try:
            action(handle)
        except ClickIntercepted as exc:
            last_error = exc
            logger.debug("%s click failed: %s", name, exc)
            continue
        if session.changed_near(handle, token, INTERACTION_SIGNAL_TIMEOUT_S):
            return name
    raise InteractionFailed(
        f"no strategy registered the interaction (last error: {last_error})")


class ReplayEngine:
    """Owns exactly one browser session; drive from a single thread."""

    def __init__(self, session: BrowserSession, clock=None,
                 state_classes: Optional[Dict[str, str]] = None,
                 verify_timeout_s: float = 2.0):
        self.session = session
        self.clock = clock or SystemClock()
        self.state_classes = dict(DEFAULT_STATE_CLASSES)
        if state_classes:
            self.state_classes.update(state_classes)
        self.verify_timeout_s = verify_timeout_s
        self._last_strategy = None

    # -- state ------------------------------------------------------------

    def detect_state(self, handle) -> ElementState:
        return detect_state_from_info(self.session.element_info(handle),
                                      self.state_classes)

    def reconcile_state(self, handle, desired: str):
        """Interact only when the detected state differs from ``desired``;
        verify afterwards, retrying the interaction at most once."""
        assert desired in ("ON", "OFF")
        self._last_strategy = None
        current = self.detect_state(handle)
        if current.value == desired:
            return False, current
        for attempt in range(2):
            self._last_strategy = self.execute_interaction(handle, "click")
            final = self._await_state(handle, desired)
            if final.value == desired:
                return True, final
            logger.warning("state verify failed (attempt %d): want %s got %s",
                           attempt + 1, desired, final.value)
        raise StateVerificationFailed(
            f"desired {desired}, detected {final.value} after retry")

    def _await_state(self, handle, desired: str) -> ElementState:
        deadline = self.clock.now() + self.verify_timeout_s
        while True:
            state = self.detect_state(handle)
            if state.value == desired or self.clock.now() >= deadline:
                return state
            self.clock.sleep(0.1)

    # -- interaction --------------------------------------------------------

    def execute_interaction(self, handle, event_type: str) -> str:
        return execute_interaction(self.session, handle, event_type)

    # -- context ----------------------------------------------------------

    def switch_context(self, frame_path: FramePath, primary_window: str,
                       last_interaction_at: float) -> None:
        """Move driver focus for the next event: newest-window OAuth-popup
        heuristic first, then descend iframe hops."""
        session = self.session
        handles = session.window_handles()
        if session.current_window() not in handles:
            # popup the engine was focused on has closed; return to primary
            session.switch_window(primary_window if primary_window in handles
                                  else handles[0])
        target_origin = frame_path.hops[0].origin if frame_path.hops else None
        if target_origin and target_origin != session.window_origin(
                session.current_window()):
            newest = handles[-1]
            is_recent = (self.clock.now() - last_interaction_at) <= POPUP_WINDOW_S
            if newest != session.current_window() and is_recent \
                    and session.window_origin(newest) == target_origin:
                session.switch_window(newest)
        session.switch_to_top()
        for i, hop in enumerate(frame_path.hops):
            if hop.frame_selector is None and hop.index_in_parent < 0:
                continue  # window-context hop, already handled above
            ok = session.switch_into_frame(hop.frame_selector, hop.index_in_parent)
            if not ok:
                raise ContextError(i, f"frame hop unresolved: {hop}")

    # -- full replay --------------------------------------------------------

    def replay(self, trace: SessionTrace,
               directive: Optional[StateDirective] = None) -> ReplayReport:
        if directive is not None:
            directive.validate_against(trace)
        report = ReplayReport(events_total=len(trace.events))
        self.session.navigate(trace.start_url)
        primary = self.session.current_window()
        last_interaction_at = self.clock.now()
        aborted = False

        for position, event in enumerate(trace.events):
            outcome = EventOutcome(seq=event.seq)
            report.per_event.append(outcome)
            if aborted:
                outcome.failed = True
                outcome.verified = False
                outcome.failure_reason = "not attempted: replay aborted earlier"
                continue
            try:
                self.switch_context(event.frame_path, primary, last_interaction_at)
                resolution = self._resolve_with_retries(event)
                outcome.tier_used = resolution.tier_used
                outcome.ambiguity_count = resolution.ambiguity_count
                self._replay_event(event, resolution.element, directive, outcome)
                last_interaction_at = self.clock.now()
            except ResolutionNotFound as exc:
                outcome.failed = True
                outcome.verified = False
                outcome.failure_reason = f"resolution failed: {exc}"
                aborted = True
            except (ContextError, InteractionFailed,
                    StateVerificationFailed, ClickIntercepted) as exc:
                outcome.failed = True
                outcome.verified = False
                outcome.failure_reason = f"{type(exc).__name__}: {exc}"

        report.events_executed = sum(
            1 for ev in report.per_event
            if not ev.failed and not ev.skipped_state_match)
        report.events_skipped_state_match = sum(
            1 for ev in report.per_event if ev.skipped_state_match)
        if aborted or report.events_failed:
            report.outcome = "failed" if aborted else "partial"
        return report

    def _resolve_with_retries(self, event: RecordedEvent):
        last_exc = None
        for attempt in range(RESOLUTION_RETRIES):
            try:
                return resolve(event.locator, event.frame_path, self.session)
            except ResolutionNotFound as exc:
                last_exc = exc
                if attempt + 1 < RESOLUTION_RETRIES:
                    self.clock.sleep(RESOLUTION_BACKOFF_S)  # absorb late hydration
        raise last_exc

    def _replay_event(self, event: RecordedEvent, handle,
                      directive: Optional[StateDirective],
                      outcome: EventOutcome) -> None:
        desired = directive.desired_for(event) if directive is not None else None
        outcome.state_before = self.detect_state(handle)

        if event.event_type == "input":
            self.session.clear_and_type(handle, event.typed_text or "")
            outcome.state_after = self.detect_state(handle)
            return
        if event.event_type == "key":
            self.session.press_key(handle, "")
            outcome.state_after = self.detect_state(handle)
            return

        if desired is not None:
            acted, final = self.reconcile_state(handle, desired)
            outcome.state_after = final
            if not acted:
                outcome.skipped_state_match = True
            else:
                outcome.click_strategy = self._last_strategy
            return

        outcome.click_strategy = self.execute_interaction(handle, event.event_type)
        outcome.state_after = self.detect_state(handle)


def replay(trace: SessionTrace, directive: Optional[StateDirective],
           session: BrowserSession, clock=None,
           state_classes: Optional[Dict[str, str]] = None) -> ReplayReport:
    return ReplayEngine(session, clock=clock,
                        state_classes=state_classes).replay(trace, directive)
