"""Exception hierarchy shared across the package."""


class WebstateError(Exception):
    """Base class for all package errors."""


class TraceValidationError(WebstateError):
    """A trace file or in-memory trace violates the schema.

    ``violations`` is a list of (json_pointer, message) tuples covering every
    problem found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(f"{ptr}: {msg}" for ptr, msg in self.violations)
        super().__init__(f"invalid trace: {summary}")


class ResolutionNotFound(WebstateError):
    """Every locator tier failed for an element.

    ``tier_failures`` maps tier name -> human-readable failure reason.
    """

    def __init__(self, tier_failures):
        self.tier_failures = dict(tier_failures)
        detail = "; ".join(f"{t}: {r}" for t, r in self.tier_failures.items())
        super().__init__(f"element not found by any tier ({detail})")


class IndexUnavailable(WebstateError):
    """The interaction-index script could not run in the page."""


class InteractionFailed(WebstateError):
    """All click strategies ran without the page registering the interaction."""


class ContextError(WebstateError):
    """A frame/window hop in a frame path could not be resolved."""

    def __init__(self, hop_index, message):
        self.hop_index = hop_index
        super().__init__(f"context switch failed at hop {hop_index}: {message}")


class StateVerificationFailed(WebstateError):
    """An element did not reach the desired state after interaction and retry."""


class ClickIntercepted(WebstateError):
    """A native click was swallowed by another element covering the target."""


class ProfileError(WebstateError):
    """Browser profile preparation failed."""


class LabelError(WebstateError):
    """An action referenced a label absent from the last observation."""


class TabError(WebstateError):
    """A tab switch referenced a URL that matches no open tab."""


class ActionParseError(WebstateError):
    """A policy's raw action text did not match the action grammar."""

    def __init__(self, raw, message):
        self.raw = raw
        super().__init__(f"{message}: {raw!r}")


class DatasetError(WebstateError):
    """A task dataset failed validation; message lists the offending rows."""


class AggregationError(WebstateError):
    """A results log cannot be aggregated (e.g. mixed datasets)."""
