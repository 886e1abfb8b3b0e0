"""Seeded pseudo-random local work between benchmark operations.

Each thread gets its own xorshift64* stream derived from (seed, thread
id), so work sequences are deterministic per thread and independent of
interleaving.  The same generator is reused by the benchmark harness
for workload op selection, with a different derivation constant so the
two streams stay decoupled.
"""

from .atomic import MASK64

# Odd multiplier for per-thread seed derivation (golden-ratio gamma).
THREAD_SEED_MULT = 0x9E3779B97F4A7C15
_STAR_MULT = 0x2545F4914F6CDD1D

MAX_TEAM_THREADS = 512


def derive_seed(seed: int, thread_id: int) -> int:
    """Per-thread stream seed: seed XOR (thread_id * odd constant)."""
    s = (seed ^ ((thread_id * THREAD_SEED_MULT) & MASK64)) & MASK64
    # xorshift locks up on an all-zero state
    return s if s != 0 else THREAD_SEED_MULT


class XorShift64:
    """xorshift64* generator over 64-bit state."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64 or THREAD_SEED_MULT

    def next(self) -> int:
        x = self._state
        x ^= x >> 12
        x = (x ^ (x << 25)) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * _STAR_MULT) & MASK64

    def next_below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound); bound >= 1."""
        return self.next() % bound


class WorkKnob:
    """Contention knob: bounded random busy-work between operations.

    max_work = 0 performs no local work.  Streams are allocated per
    thread id up to `n_threads` slots (default: the team hard cap).
    """

    def __init__(self, max_work: int, seed: int, n_threads: int = MAX_TEAM_THREADS):
        if max_work < 0:
            raise ValueError("max_work must be non-negative")
        self.max_work = max_work
        self.seed = seed & MASK64
        self._streams = [None] * n_threads

    def _stream(self, thread_id: int) -> XorShift64:
        s = self._streams[thread_id]
        if s is None:
            # each slot is touched by a single thread, so no lock needed
            s = XorShift64(derive_seed(self.seed, thread_id))
            self._streams[thread_id] = s
        return s


def random_work(knob: WorkKnob, thread_id: int) -> int:
    """Busy-loop k iterations, 0 <= k <= max_work, from the thread's stream."""
    if knob.max_work == 0:
        return 0
    k = knob._stream(thread_id).next_below(knob.max_work + 1)
    for _ in range(k):
        pass
    return k
