"""Action grammar: the reply format policies must emit.

A policy reply carries a ``Thought:`` line and an ``Action:`` line; the
action grammar is keyword case-insensitive and whitespace tolerant:

    Click [N]            Hover [N]           Type [N]; content
    Scroll [N|WINDOW]; up|down|left|right    Scroll_to_end
    Scroll_within_popup; up|down|left|right  Switch_tab [URL]
    Wait                 GoBack              Google
    ANSWER; content

``Type`` with empty content clears the field; typing never appends a submit
keystroke.
"""

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import ActionParseError

KINDS = ("Click", "Hover", "Type", "Scroll", "ScrollToEnd", "ScrollWithinPopup",
         "SwitchTab", "Wait", "GoBack", "Google", "Answer")

SCROLL_KINDS = ("Scroll", "ScrollToEnd", "ScrollWithinPopup")
DIRECTIONS = ("up", "down", "left", "right")


@dataclass(frozen=True)
class Action:
    kind: str
    label: Optional[int] = None
    text: Optional[str] = None
    direction: Optional[str] = None
    target_url: Optional[str] = None

    def counts_toward_budget(self) -> bool:
        """Everything except scrolling and waiting consumes the iteration
        budget; Answer counts too (it is a decision step, and being terminal
        it can never flip an outcome)."""
        return self.kind not in ("Scroll", "ScrollToEnd", "ScrollWithinPopup",
                                 "Wait")

    def format(self) -> str:
        if self.kind in ("Click", "Hover"):
            return f"{self.kind} [{self.label}]"
        if self.kind == "Type":
            return f"Type [{self.label}]; {self.text}"
        if self.kind == "Scroll":
            target = "WINDOW" if self.label is None else str(self.label)
            return f"Scroll [{target}]; {self.direction}"
        if self.kind == "ScrollToEnd":
            return "Scroll_to_end"
        if self.kind == "ScrollWithinPopup":
            return f"Scroll_within_popup; {self.direction}"
        if self.kind == "SwitchTab":
            return f"Switch_tab [{self.target_url}]"
        if self.kind == "Answer":
            return f"ANSWER; {self.text}"
        return self.kind


_WORDSEP = r"[\s_]+"

_PATTERNS = [
    (re.compile(r"^click\s*\[(\d+)\]$", re.I),
     lambda m: Action("Click", label=int(m.group(1)))),
    (re.compile(r"^hover\s*\[(\d+)\]$", re.I),
     lambda m: Action("Hover", label=int(m.group(1)))),
    (re.compile(r"^type\s*\[(\d+)\]\s*;(.*)$", re.I | re.S),
     lambda m: Action("Type", label=int(m.group(1)), text=m.group(2).strip())),
    (re.compile(rf"^scroll{_WORDSEP}to{_WORDSEP}end$", re.I),
     lambda m: Action("ScrollToEnd")),
    (re.compile(rf"^scroll{_WORDSEP}within{_WORDSEP}popup\s*;\s*"
                r"(up|down|left|right)$", re.I),
     lambda m: Action("ScrollWithinPopup", direction=m.group(1).lower())),
    (re.compile(r"^scroll\s*\[(\d+|window)\]\s*;\s*(up|down|left|right)$", re.I),
     lambda m: Action("Scroll",
                      label=None if m.group(1).lower() == "window"
                      else int(m.group(1)),
                      direction=m.group(2).lower())),
    (re.compile(rf"^switch{_WORDSEP}tab\s*\[([^\]]+)\]$", re.I),
     lambda m: Action("SwitchTab", target_url=m.group(1).strip())),
    (re.compile(r"^wait$", re.I), lambda m: Action("Wait")),
    (re.compile(r"^go[\s_]*back$", re.I), lambda m: Action("GoBack")),
    (re.compile(r"^google$", re.I), lambda m: Action("Google")),
    (re.compile(r"^answer\s*;(.*)$", re.I | re.S),
     lambda m: Action("Answer", text=m.group(1).strip())),
]

_ACTION_LINE = re.compile(r"action\s*:\s*", re.I)


def extract_action_line(raw: str) -> str:
    """Pull the action text out of a full policy reply; if there is no
    ``Action:`` marker the whole string is treated as the action."""
    parts = _ACTION_LINE.split(raw)
    text = parts[-1] if len(parts) > 1 else raw
    return text.strip()


def extract_thought(raw: str) -> str:
    match = re.search(r"thought\s*:\s*(.*?)(?:\n\s*action\s*:|$)", raw,
                      re.I | re.S)
    return match.group(1).strip() if match else ""


def parse_action(raw: str) -> Action:
    text = extract_action_line(raw or "")
    if not text:
        raise ActionParseError(raw, "empty action")
    for pattern, build in _PATTERNS:
        match = pattern.match(text)
        if match:
            return build(match)
    raise ActionParseError(raw, "does not match any action form")
