"""Monotonic timing."""

import time


def now() -> int:
    """Monotonic nanoseconds; non-decreasing within a thread."""
    return time.monotonic_ns()
