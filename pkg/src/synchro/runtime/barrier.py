"""Centralized spin barrier over two atomic words."""

from .atomic import AtomicWord
from .spin import yield_cpu


class Barrier:
    """Reusable phase barrier for a fixed number of waiters.

    No thread leaves phase p before all `expected` threads entered it.
    Calling wait() from more than `expected` threads concurrently is
    undefined behaviour (not detected).
    """

    def __init__(self, expected: int):
        if expected < 1:
            raise ValueError("expected must be positive")
        self.expected = expected
        self.arrived = AtomicWord(0)
        self.phase = AtomicWord(0)

    def wait(self) -> int:
        """Block until the current phase completes; return its index."""
        my_phase = self.phase.load()
        pos = self.arrived.fetch_add(1)
        if pos == self.expected - 1:
            # last arrival: reset the arrival count, then open the gate.
            # Order matters: a waiter can only re-enter after seeing the
            # phase advance, which happens after the reset.
            self.arrived.store(0)
            self.phase.fetch_add(1)
        else:
            while self.phase.load() == my_phase:
                yield_cpu()
        return my_phase


def barrier_wait(b: Barrier) -> int:
    return b.wait()
