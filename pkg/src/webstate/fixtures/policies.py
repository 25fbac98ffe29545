"""Named policies for the fixture benchmark.

scripted-perfect solves every instance (including leaving already-satisfied
states untouched); scripted-wrong-toggle always flips the target on dual-state
instances, so it succeeds exactly when the initial state was ON;
scripted-overstepper clicks forever; scroll-only scrolls forever.
"""

from typing import Dict, List

from ..agent.policies import PolicyFactory, ScriptedStep


def _s(action, find_text=None, text=None, seek="scroll", raw=None) -> ScriptedStep:
    return ScriptedStep(action=action, find_text=find_text, text=text,
                        seek=seek, raw=raw)


def _toggle_program(nav_text: str, toggle_text: str, save: bool) -> List[ScriptedStep]:
    steps = [_s("Click", find_text=nav_text), _s("Click", find_text=toggle_text)]
    if save:
        steps.append(_s("Click", find_text="Save changes", seek="scroll_to_end"))
    steps.append(_s("Answer", text=f"turned off {toggle_text}"))
    return steps


def _leave_alone_program(nav_text: str, toggle_text: str) -> List[ScriptedStep]:
    return [
        _s("Click", find_text=nav_text),
        _s("Answer", text=f"{toggle_text} is already in the requested state"),
    ]


def _cookie_program(radio_label: str) -> List[ScriptedStep]:
    return [
        _s("Click", find_text="Privacy choices", seek="scroll_to_end"),
        _s("Click", find_text=radio_label, seek="scroll_within_popup"),
        _s("Click", find_text="Confirm choices"),
        _s("Answer", text=f"selected {radio_label} and confirmed"),
    ]


_SIGNOUT = [
    _s("Click", find_text="Settings"),
    _s("Click", find_text="Account"),
    _s("Click", find_text="Sign out"),
    _s("Answer", text="signed out"),
]

_DISPLAYNAME = [
    _s("Click", find_text="Account"),
    _s("Type", find_text="Display name", text="Anonymous"),
    _s("Answer", text="display name set to Anonymous"),
]

_PERFECT: Dict[str, List[ScriptedStep]] = {
    "a-email-on": _toggle_program("Settings", "Email notifications", save=True),
    "a-email-off": _leave_alone_program("Settings", "Email notifications"),
    "a-promo-on": _toggle_program("Settings", "Partner promotions", save=True),
    "a-promo-off": _leave_alone_program("Settings", "Partner promotions"),
    "b-public-on": _toggle_program("Profile settings", "Public profile", save=False),
    "b-public-off": _leave_alone_program("Profile settings", "Public profile"),
    "b-indexing-on": _toggle_program("Profile settings", "Search engine indexing",
                                     save=False),
    "b-indexing-off": _leave_alone_program("Profile settings",
                                           "Search engine indexing"),
    "c-marketing": _cookie_program("Reject marketing cookies"),
    "c-analytics": _cookie_program("Reject analytics cookies"),
    "a-signout": _SIGNOUT,
    "b-displayname": _DISPLAYNAME,
}

# always interacts with the stateful target, regardless of its current state
_WRONG_TOGGLE: Dict[str, List[ScriptedStep]] = dict(_PERFECT)
_WRONG_TOGGLE.update({
    "a-email-off": _toggle_program("Settings", "Email notifications", save=True),
    "a-promo-off": _toggle_program("Settings", "Partner promotions", save=True),
    "b-public-off": _toggle_program("Profile settings", "Public profile",
                                    save=False),
    "b-indexing-off": _toggle_program("Profile settings",
                                      "Search engine indexing", save=False),
})


def named_policy_factories() -> Dict[str, PolicyFactory]:
    return {
        "scripted-perfect": PolicyFactory(
            policy_id="scripted-perfect", programs=_PERFECT),
        "scripted-wrong-toggle": PolicyFactory(
            policy_id="scripted-wrong-toggle", programs=_WRONG_TOGGLE),
        "scripted-overstepper": PolicyFactory(
            policy_id="scripted-overstepper", raw_action="Click [0]"),
        "scroll-only": PolicyFactory(
            policy_id="scroll-only", raw_action="Scroll [WINDOW]; down"),
    }
