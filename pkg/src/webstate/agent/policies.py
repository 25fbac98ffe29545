"""Decision policies: the live model-backed policy and deterministic scripted
policies for offline runs.

A scripted policy executes an ordered program of steps. Steps that target an
element by text look it up in the current observation; while the element is
not on screen the policy emits the step's seek action (scroll variants), so
programs stay deterministic without hardcoding label numbers.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..model_client import ModelClient
from .actions import extract_action_line, extract_thought
from .observe import Observation
from .runtime import PolicyContext, PolicyDecision

MAX_SEEK_ATTEMPTS = 15


@dataclass
class ScriptedStep:
    """One program entry.

    action: Click | Hover | Type | Answer | raw
    find_text: substring locating the target in the observation
    text: content for Type/Answer
    seek: scroll | scroll_to_end | scroll_within_popup — emitted while the
          target is not visible
    raw: verbatim action text (action == "raw")
    """

    action: str
    find_text: Optional[str] = None
    text: Optional[str] = None
    seek: str = "scroll"
    raw: Optional[str] = None


_SEEK_ACTIONS = {
    "scroll": "Scroll [WINDOW]; down",
    "scroll_to_end": "Scroll_to_end",
    "scroll_within_popup": "Scroll_within_popup; down",
}


class ScriptedPolicy:
    """Deterministic ordered-step policy; one instance per run."""

    def __init__(self, program: List[ScriptedStep], policy_id: str = "scripted"):
        self.program = [ScriptedStep(**s) if isinstance(s, dict) else s
                        for s in program]
        self.policy_id = policy_id
        self._cursor = 0
        self._seek_attempts = 0

    def decide(self, context: PolicyContext) -> PolicyDecision:
        if self._cursor >= len(self.program):
            return PolicyDecision("program exhausted", "ANSWER; program exhausted")
        step = self.program[self._cursor]

        if step.action == "raw":
            self._cursor += 1
            return PolicyDecision(f"scripted step {self._cursor}", step.raw or "")

        if step.action == "Answer":
            self._cursor += 1
            return PolicyDecision("task finished", f"ANSWER; {step.text or 'done'}")

        label = self._find_label(context.observation, step.find_text)
        if label is None:
            self._seek_attempts += 1
            if self._seek_attempts > MAX_SEEK_ATTEMPTS:
                self._cursor += 1
                self._seek_attempts = 0
                return PolicyDecision(
                    f"could not find '{step.find_text}'",
                    f"GIVE-UP could not locate {step.find_text}")  # unparseable
            return PolicyDecision(
                f"looking for '{step.find_text}'", _SEEK_ACTIONS[step.seek])

        self._seek_attempts = 0
        self._cursor += 1
        if step.action == "Type":
            return PolicyDecision(
                f"typing into '{step.find_text}'",
                f"Type [{label}]; {step.text or ''}")
        return PolicyDecision(
            f"{step.action.lower()} on '{step.find_text}'",
            f"{step.action} [{label}]")

    @staticmethod
    def _find_label(observation: Observation, needle: Optional[str]
                    ) -> Optional[int]:
        if needle is None:
            return None
        exact = [e for e in observation.elements if e.text == needle]
        if exact:
            return exact[0].label
        partial = [e for e in observation.elements if needle in e.text]
        if partial:
            return partial[0].label
        return None


class RepeatingPolicy:
    """Emits one raw action forever (e.g. a scroll-only or click-happy agent)."""

    def __init__(self, raw_action: str, policy_id: str = "repeating"):
        self.raw_action = raw_action
        self.policy_id = policy_id

    def decide(self, context: PolicyContext) -> PolicyDecision:
        return PolicyDecision("repeat", self.raw_action)


class ModelPolicy:
    """Live model-backed policy speaking the Thought:/Action: reply format."""

    def __init__(self, client: ModelClient, system_prompt: str,
                 policy_id: Optional[str] = None):
        self.client = client
        self.system_prompt = system_prompt
        self.policy_id = policy_id or client.model_id

    def decide(self, context: PolicyContext) -> PolicyDecision:
        payload: List[dict] = [{"type": "text", "text": f"Task: {context.prompt}"}]
        for step in context.history:
            payload.append({
                "type": "text",
                "text": f"Step {step.index} thought: {step.thought}\n"
                        f"Step {step.index} action: {step.raw_action}",
            })
        if context.notice:
            payload.append({"type": "text", "text": context.notice})
        payload.append({"type": "text", "text":
                        "Observation (interactive elements):\n"
                        + context.observation.text_summary()})
        payload.append({"type": "text",
                        "text": f"Open tabs: "
                        + "; ".join(f"{t.title} <{t.url}>"
                                    + (" [active]" if t.active else "")
                                    for t in context.observation.tabs)})
        for png in context.recent_screenshots:
            payload.append({"type": "image", "png": png})
        reply = self.client.send(self.system_prompt, payload)
        return PolicyDecision(extract_thought(reply), extract_action_line(reply))


@dataclass
class PolicyFactory:
    """Builds a fresh policy per (instance, variant) run.

    Scripted factories carry per-instance programs keyed by instance_id so a
    single named policy can solve state-dependent instances deterministically.
    """

    policy_id: str
    programs: Dict[str, List[ScriptedStep]] = field(default_factory=dict)
    raw_action: Optional[str] = None
    model_client: Optional[ModelClient] = None
    system_prompt: str = ""

    def build(self, instance_id: str):
        if self.raw_action is not None:
            return RepeatingPolicy(self.raw_action, policy_id=self.policy_id)
        if self.model_client is not None:
            return ModelPolicy(self.model_client, self.system_prompt,
                               policy_id=self.policy_id)
        program = self.programs.get(instance_id)
        if program is None:
            raise KeyError(
                f"policy {self.policy_id!r} has no program for {instance_id!r}")
        return ScriptedPolicy(program, policy_id=self.policy_id)
