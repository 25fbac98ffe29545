"""Wall-clock abstraction so budget and timeout logic is testable.

Production code uses SystemClock; tests inject a FakeClock and advance it
manually (or via auto_tick, which charges a fixed cost per now() call to
simulate slow policies without real sleeps).
"""

import time


class SystemClock:
    def now(self) -> float:
        return time.monotonic()

    def sleep(self, seconds: float) -> None:
        time.sleep(seconds)


class FakeClock:
    def __init__(self, start: float = 0.0, auto_tick: float = 0.0):
        self._now = start
        self.auto_tick = auto_tick

    def now(self) -> float:
        current = self._now
        self._now += self.auto_tick
        return current

    def sleep(self, seconds: float) -> None:
        self._now += max(0.0, seconds)

    def advance(self, seconds: float) -> None:
        self._now += seconds
