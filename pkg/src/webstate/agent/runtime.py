"""The observe-decide-act loop with budget enforcement.

Budgets follow the benchmark regime: at most 20 non-scroll/non-wait steps
(Answer and malformed replies consume budget too; the limit-breaching step is
recorded and the run stops without executing it) and a 10-minute wall clock.
Each step persists the parsed action, the pre-action observation, and a
post-action screenshot, which is the pairing the judge consumes.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import List, Optional

from ..browser import BrowserSession
from ..clock import SystemClock
from ..errors import (ActionParseError, ClickIntercepted, ContextError,
                      InteractionFailed, LabelError, TabError, WebstateError)
from ..replay import execute_interaction
from .actions import Action, parse_action
from .observe import Observation, observe, save_observation

logger = logging.getLogger(__name__)

SCROLL_FRACTION = 2 / 3
WAIT_SECONDS = 5.0
SEARCH_ENGINE_URL = "https://www.google.com"
POLICY_RETRIES = 2


@dataclass
class Budgets:
    nonscroll_nonwait: int = 20
    wallclock_s: float = 600.0


@dataclass
class TrajectoryStep:
    index: int
    thought: str
    raw_action: str
    action: Optional[Action]
    parse_error: Optional[str] = None
    exec_error: Optional[str] = None
    executed: bool = False
    observation_ref: Optional[str] = None
    screenshot_ref: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "thought": self.thought,
            "raw_action": self.raw_action,
            "action": None if self.action is None else self.action.format(),
            "kind": None if self.action is None else self.action.kind,
            "parse_error": self.parse_error,
            "exec_error": self.exec_error,
            "executed": self.executed,
            "observation_ref": self.observation_ref,
            "screenshot_ref": self.screenshot_ref,
        }


@dataclass
class Trajectory:
    task_id: str
    prompt: str
    steps: List[TrajectoryStep] = field(default_factory=list)
    termination: str = "answered"  # answered | iteration_limit | timeout | fatal_error
    wallclock_s: float = 0.0
    nonscroll_nonwait_count: int = 0  # executed non-scroll/non-wait actions
    budget_steps: int = 0  # decision steps charged against the iteration budget
    answer: Optional[str] = None
    out_dir: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "prompt": self.prompt,
            "termination": self.termination,
            "wallclock_s": self.wallclock_s,
            "nonscroll_nonwait_count": self.nonscroll_nonwait_count,
            "budget_steps": self.budget_steps,
            "answer": self.answer,
            "steps": [step.to_json() for step in self.steps],
        }

    def save(self) -> None:
        if not self.out_dir:
            return
        with open(os.path.join(self.out_dir, "trajectory.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)
            fh.write("\n")


@dataclass
class PolicyContext:
    """What a policy sees when deciding: the prompt, the full text history,
    the current observation, the most recent screenshots, and any notice about
    the previous reply (e.g. a parse error)."""

    prompt: str
    history: List[TrajectoryStep]
    observation: Observation
    recent_screenshots: List[bytes]
    notice: Optional[str] = None


@dataclass
class PolicyDecision:
    thought: str
    raw_action_text: str


class AgentRuntime:
    """One runtime per session per control thread; policy calls block."""

    def __init__(self, session: BrowserSession, clock=None, som_seed: int = 0,
                 screenshot_window: int = 3):
        self.session = session
        self.clock = clock or SystemClock()
        self.som_seed = som_seed
        self.screenshot_window = screenshot_window

    # -- action execution ---------------------------------------------------

    def execute_action(self, action: Action, observation: Observation) -> None:
        session = self.session
        if action.kind in ("Click", "Hover", "Type"):
            element = observation.element_by_label(action.label)
            if element is None:
                raise LabelError(f"label {action.label} not in last observation")
            if action.kind == "Click":
                execute_interaction(session, element.handle, "click")
            elif action.kind == "Hover":
                session.hover(element.handle)
            else:
                session.clear_and_type(element.handle, action.text or "")
            return
        if action.kind == "Scroll":
            self._scroll(action, observation)
            return
        if action.kind == "ScrollToEnd":
            session.scroll_to_end()
            return
        if action.kind == "ScrollWithinPopup":
            self._scroll_popup(action)
            return
        if action.kind == "SwitchTab":
            self._switch_tab(action.target_url)
            return
        if action.kind == "Wait":
            self.clock.sleep(WAIT_SECONDS)
            return
        if action.kind == "GoBack":
            session.go_back()
            return
        if action.kind == "Google":
            session.navigate(SEARCH_ENGINE_URL)
            return
        raise WebstateError(f"unexecutable action kind {action.kind}")

    def _scroll(self, action: Action, observation: Observation) -> None:
        width, height = self.session.viewport_size()
        sign = {"down": 1, "up": -1, "right": 1, "left": -1}[action.direction]
        horizontal = action.direction in ("left", "right")
        if action.label is None:
            dx = int(width * SCROLL_FRACTION) * sign if horizontal else 0
            dy = 0 if horizontal else int(height * SCROLL_FRACTION) * sign
            self.session.scroll_window(dx, dy)
            return
        element = observation.element_by_label(action.label)
        if element is None:
            raise LabelError(f"label {action.label} not in last observation")
        x, y, w, h = element.rect
        target = self.resolve_scroll_target(x + w // 2, y + h // 2)
        if target is None:
            dx = int(width * SCROLL_FRACTION) * sign if horizontal else 0
            dy = 0 if horizontal else int(height * SCROLL_FRACTION) * sign
            self.session.scroll_window(dx, dy)
            return
        rect = self.session.element_info(target).rect
        if horizontal:
            step = int((rect[2] if rect else width) * SCROLL_FRACTION)
            self.session.scroll_element(target, step * sign, 0)
        else:
            step = int((rect[3] if rect else height) * SCROLL_FRACTION)
            self.session.scroll_element(target, 0, step * sign)

    def resolve_scroll_target(self, x: int, y: int):
        """First node in the element stack at (x, y), walking top-down, whose
        computed overflow allows scrolling and whose content exceeds its
        client box; None means the document scrolling element."""
        return self.session.scrollable_at(x, y)

    def _scroll_popup(self, action: Action) -> None:
        target = self.session.popup_scroll_target()
        sign = 1 if action.direction in ("down", "right") else -1
        if target is None:
            raise WebstateError("no open popup to scroll")
        info = self.session.element_info(target)
        client_h = info.rect[3] if info.rect else self.session.viewport_size()[1]
        self.session.scroll_element(target, 0, int(client_h * SCROLL_FRACTION) * sign)

    def _switch_tab(self, target_url: str) -> None:
        tabs = self.session.tabs()
        for tab in tabs:
            if tab.url == target_url:
                self.session.switch_window(tab.handle)
                return
        for tab in tabs:
            if tab.url.startswith(target_url.rstrip("/")):
                self.session.switch_window(tab.handle)
                return
        raise TabError(f"no open tab matches {target_url}")

    # -- main loop -----------------------------------------------------------

    def run(self, task_id: str, prompt: str, policy, budgets: Budgets = None,
            out_dir: Optional[str] = None) -> Trajectory:
        budgets = budgets or Budgets()
        trajectory = Trajectory(task_id=task_id, prompt=prompt, out_dir=out_dir)
        if out_dir:
            os.makedirs(os.path.join(out_dir, "screenshots"), exist_ok=True)
            os.makedirs(os.path.join(out_dir, "observations"), exist_ok=True)
        start = self.clock.now()
        screenshots: List[bytes] = []
        notice: Optional[str] = None
        step_index = 0

        while True:
            if self.clock.now() - start >= budgets.wallclock_s:
                trajectory.termination = "timeout"
                break

            observation = observe(self.session, step_index, seed=self.som_seed)
            screenshots.append(observation.screenshot_png)
            del screenshots[:-self.screenshot_window]

            decision = self._decide(policy, PolicyContext(
                prompt=prompt, history=trajectory.steps,
                observation=observation,
                recent_screenshots=list(screenshots), notice=notice))
            notice = None
            if decision is None:
                trajectory.termination = "fatal_error"
                break

            step = TrajectoryStep(
                index=step_index, thought=decision.thought,
                raw_action=decision.raw_action_text, action=None)
            trajectory.steps.append(step)
            if out_dir:
                obs_ref = os.path.join("observations", f"step_{step_index}.json")
                save_observation(observation, os.path.join(out_dir, obs_ref))
                step.observation_ref = obs_ref

            try:
                action = parse_action(decision.raw_action_text)
                step.action = action
            except ActionParseError as exc:
                # malformed output consumes a budget step; re-prompt with the
                # same page plus a one-line notice
                step.parse_error = str(exc)
                trajectory.budget_steps += 1
                notice = f"Your previous reply could not be parsed: {exc}"
                if trajectory.budget_steps > budgets.nonscroll_nonwait:
                    trajectory.termination = "iteration_limit"
                    break
                self._capture_post(step, step_index, out_dir)
                step_index += 1
                continue

            if action.counts_toward_budget():
                trajectory.budget_steps += 1

            if action.kind == "Answer":
                trajectory.answer = action.text
                trajectory.termination = "answered"
                self._capture_post(step, step_index, out_dir)
                break

            if trajectory.budget_steps > budgets.nonscroll_nonwait:
                # the breaching step is recorded but not executed
                trajectory.termination = "iteration_limit"
                break

            try:
                self.execute_action(action, observation)
                step.executed = True
                if action.counts_toward_budget():
                    trajectory.nonscroll_nonwait_count += 1
            except (LabelError, TabError, InteractionFailed, ClickIntercepted,
                    ContextError, WebstateError) as exc:
                step.exec_error = f"{type(exc).__name__}: {exc}"
                notice = f"Your previous action failed: {step.exec_error}"
            self._capture_post(step, step_index, out_dir)
            step_index += 1

        trajectory.wallclock_s = self.clock.now() - start
        trajectory.save()
        return trajectory

    def _decide(self, policy, context: PolicyContext) -> Optional[PolicyDecision]:
        for attempt in range(POLICY_RETRIES + 1):
            try:
                return policy.decide(context)
            except Exception as exc:
                logger.warning("policy failure (attempt %d): %s", attempt + 1, exc)
        return None

    def _capture_post(self, step: TrajectoryStep, step_index: int,
                      out_dir: Optional[str]) -> None:
        """Post-action screenshot: the page state the judge pairs with this
        step."""
        if not out_dir:
            return
        ref = os.path.join("screenshots", f"step_{step_index}.png")
        try:
            png = self.session.screenshot()
        except Exception as exc:
            logger.warning("post-action screenshot failed: %s", exc)
            return
        with open(os.path.join(out_dir, ref), "wb") as fh:
            fh.write(png)
        step.screenshot_ref = ref


def run_agent(task_id: str, prompt: str, policy, session: BrowserSession,
              budgets: Budgets = None, clock=None, out_dir: Optional[str] = None,
              som_seed: int = 0) -> Trajectory:
    runtime = AgentRuntime(session, clock=clock, som_seed=som_seed)
    return runtime.run(task_id, prompt, policy, budgets=budgets, out_dir=out_dir)
