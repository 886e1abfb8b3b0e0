"""64-bit atomic word.

Every mutating operation takes the cell's lock, so mutations are atomic
and totally ordered per cell.  Loads read the attribute directly: under
CPython a single attribute read is indivisible, and the interpreter gives
acquire/release visibility at thread switches, so a load always observes
either the value before or after any in-flight mutation.  The result is
sequentially consistent behaviour for the operation mix offered here.

Values are unsigned 64-bit; arithmetic wraps modulo 2**64.
"""

import threading

MASK64 = (1 << 64) - 1


class AtomicWord:
    """A single 64-bit cell with compare-and-swap, fetch-and-add, exchange."""

    __slots__ = ("_value", "_lock", "_seq")

    def __init__(self, value: int = 0):
        self._value = value & MASK64
        self._lock = threading.Lock()
        self._seq = 0  # ticket counter, bumped only by exchange_ticketed

    def load(self) -> int:
        return self._value

    def store(self, value: int) -> None:
        with self._lock:
            self._value = value & MASK64

    def compare_and_swap(self, expected: int, new: int) -> bool:
        """Install `new` iff the cell holds `expected`; report success."""
        with self._lock:
            if self._value == expected:
                self._value = new & MASK64
                return True
            return False

    def fetch_add(self, delta: int) -> int:
        """Add `delta` (wrapping) and return the value held before."""
        with self._lock:
            old = self._value
            self._value = (old + delta) & MASK64
            return old

    def exchange(self, value: int) -> int:
        """Store `value` and return the value it replaced."""
        with self._lock:
            old = self._value
            self._value = value & MASK64
            return old

    def exchange_ticketed(self, value: int) -> tuple[int, int]:
        """Exchange plus a per-cell sequence number, as one atomic event.

        The sequence number counts ticketed exchanges on this cell from 0.
        Queue locks use it under test instrumentation to expose their
        enqueue order; taking the ticket inside the cell's lock is what
        makes ticket order identical to exchange order.
        """
        with self._lock:
            old = self._value
            self._value = value & MASK64
            seq = self._seq
            self._seq = seq + 1
            return old, seq

    def __repr__(self) -> str:
        return f"AtomicWord({self._value:#x})"
