"""Spin-wait helpers: CPU yield and exponential backoff.

Under the CPython GIL a spin loop that never yields starves the thread
it is waiting on, so every retry path in the library yields through
here.  `time.sleep(0)` releases the GIL and reschedules; it measured
cheaper than `os.sched_yield` on the machines this was tuned on.
"""

import time

DEFAULT_BACKOFF_CAP = 1024


def yield_cpu() -> None:
    time.sleep(0)


class Backoff:
    """Exponential backoff for lock-free retry loops.

    Each call to :meth:`spin` busy-spins the current number of units
    (starting at `initial`, doubling up to `cap`) and then yields the
    CPU.  Units are plain loop iterations; the yield is what actually
    defuses GIL contention.
    """

    __slots__ = ("_initial", "_cap", "_cur")

    def __init__(self, initial: int = 1, cap: int = DEFAULT_BACKOFF_CAP):
        if initial < 1 or cap < initial:
            raise ValueError("backoff needs 1 <= initial <= cap")
        self._initial = initial
        self._cap = cap
        self._cur = initial

    def spin(self) -> None:
        for _ in range(self._cur):
            pass
        cur = self._cur * 2
        self._cur = cur if cur < self._cap else self._cap
        time.sleep(0)

    def reset(self) -> None:
        self._cur = self._initial
