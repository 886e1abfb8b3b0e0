"""Small-scope linearizability checking by exhaustive order search.

Two complementary tools, both only tractable at small sizes (<= ~10
operations), used as the strong oracle where brute force is feasible:

- ``all_interleavings`` enumerates every merge of per-thread programs;
  ``check_sequential_interleavings`` drives a fresh structure through
  each merge single-threaded and compares every return value against a
  sequential model.

- ``record_history`` runs the programs on real threads, timestamping
  invocations and responses; ``linearizable`` then searches for a total
  order that respects real-time precedence and matches the model.
  Memoized over (linearized-set, model-state), which keeps the search
  fast for the history sizes used here.

A model is a class with ``init_state() -> hashable`` and
``step(state, op, arg) -> (state, expected_rv)``.
"""

import threading
import time
from dataclasses import dataclass

from .signals import EMPTY


@dataclass
class HistoryEvent:
    tid: int
    op: str
    arg: int
    rv: object
    t_inv: int
    t_ret: int


class SequentialStack:
    @staticmethod
    def init_state():
        return ()

    @staticmethod
    def step(state, op, arg):
        if op == "push":
            return state + (arg,), None
        if not state:
            return state, EMPTY
        return state[:-1], state[-1]


class SequentialQueue:
    @staticmethod
    def init_state():
        return ()

    @staticmethod
    def step(state, op, arg):
        if op == "enqueue":
            return state + (arg,), None
        if not state:
            return state, EMPTY
        return state[1:], state[0]


def all_interleavings(programs):
    """Yield merges of per-thread op lists as (tid, op, arg) sequences."""
    counts = [0] * len(programs)
    total = sum(len(p) for p in programs)
    path = []

    def rec():
        if len(path) == total:
            yield tuple(path)
            return
        for tid, prog in enumerate(programs):
            i = counts[tid]
            if i < len(prog):
                counts[tid] = i + 1
                op, arg = prog[i]
                path.append((tid, op, arg))
                yield from rec()
                path.pop()
                counts[tid] = i

    yield from rec()


def check_sequential_interleavings(programs, make_impl, run_op, model):
    """Drive a fresh implementation through every merge order.

    run_op(impl, tid, op, arg) -> rv.  Returns the number of orders
    checked; raises AssertionError naming the first divergence.
    """
    n = 0
    for order in all_interleavings(programs):
        impl = make_impl()
        state = model.init_state()
        for step, (tid, op, arg) in enumerate(order):
            state, expected = model.step(state, op, arg)
            got = run_op(impl, tid, op, arg)
            if got is not expected and got != expected:
                raise AssertionError(
                    f"order {order!r} step {step}: {op}({arg}) by thread {tid} "
                    f"returned {got!r}, sequential model says {expected!r}"
                )
        n += 1
    return n


def record_history(programs, make_impl, run_op, repeat: int = 1):
    """Run the programs concurrently on real threads; yield histories."""
    for _ in range(repeat):
        impl = make_impl()
        events = []
        lock = threading.Lock()
        start = threading.Barrier(len(programs))

        def worker(tid, prog):
            start.wait()
            for op, arg in prog:
                t0 = time.monotonic_ns()
                rv = run_op(impl, tid, op, arg)
                t1 = time.monotonic_ns()
                with lock:
                    events.append(HistoryEvent(tid, op, arg, rv, t0, t1))

        threads = [
            threading.Thread(target=worker, args=(tid, prog))
            for tid, prog in enumerate(programs)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        yield events


def linearizable(events, model) -> bool:
    """True iff some order matching the model respects real-time precedence."""
    n = len(events)
    if n == 0:
        return True
    full = (1 << n) - 1
    seen = set()

    def candidates(mask):
        # an op may linearize next only if no still-pending op responded
        # before it was invoked
        pend = [i for i in range(n) if not (mask >> i) & 1]
        cut = min(events[i].t_ret for i in pend)
        return [i for i in pend if events[i].t_inv <= cut]

    def dfs(mask, state):
        if mask == full:
            return True
        key = (mask, state)
        if key in seen:
            return False
        seen.add(key)
        for i in candidates(mask):
            ev = events[i]
            new_state, expected = model.step(state, ev.op, ev.arg)
            if ev.rv is expected or ev.rv == expected:
                if dfs(mask | (1 << i), new_state):
                    return True
        return False

    return dfs(0, model.init_state())
