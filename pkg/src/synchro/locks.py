"""Scalable FIFO queue locks: CLH and MCS.

Both locks queue waiters with one atomic exchange on a tail word and
grant in exchange order.  A CLH waiter spins on its predecessor's
record; an MCS waiter spins on its own node.  Neither is reentrant.

Tickets: under test instrumentation (`ticketing=True`) acquire returns
the tail cell's exchange sequence number, taken atomically with the
enqueue itself, which makes "grant order equals enqueue order" directly
checkable.  Without ticketing acquire returns 0 and the counter is
never touched.

With `debug=True` an owner field is maintained and release by a thread
that does not hold the lock raises LockUsageError.
"""

from .runtime import hooks
from .runtime.atomic import AtomicWord
from .runtime.pool import NULL_INDEX
from .runtime.spin import Backoff, yield_cpu


class LockUsageError(Exception):
    """Release without holding, or other protocol misuse."""


class _ClhRecord:
    __slots__ = ("locked",)

    def __init__(self):
        self.locked = False


class ClhLock:
    """CLH queue lock.

    Waiters chain through an atomic exchange on `tail` and spin on the
    record the exchange returned (the predecessor's).  On release a
    thread's record is observed by at most its one successor, after
    which the releaser's next acquisition adopts the predecessor's
    record: n_threads + 1 records circulate.
    """

    YIELD_POINTS = ("clh.enqueue", "clh.spin", "clh.granted", "clh.release")

    def __init__(self, n_threads: int, debug: bool = False, ticketing: bool = False):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self.debug = debug
        self.ticketing = ticketing
        self._records = [_ClhRecord() for _ in range(n_threads + 1)]
        self._mine = list(range(n_threads))
        self._holding = [-1] * n_threads
        self._tail = AtomicWord(n_threads)  # initial record, unlocked
        self._owner = -1

    def acquire(self, thread_id: int) -> int:
        recs = self._records
        my_i = self._mine[thread_id]
        recs[my_i].locked = True
        if self.ticketing:
            pred_i, ticket = self._tail.exchange_ticketed(my_i)
        else:
            pred_i, ticket = self._tail.exchange(my_i), 0
        hooks.fire("clh.enqueue", thread_id, record=my_i, pred=pred_i)
        pred = recs[pred_i]
        bo = Backoff()
        while pred.locked:
            hooks.fire("clh.spin", thread_id, cell=pred_i, own=my_i)
            bo.spin()
        # predecessor's record is ours to reuse next time
        self._mine[thread_id] = pred_i
        self._holding[thread_id] = my_i
        if self.debug:
            self._owner = thread_id
        hooks.fire("clh.granted", thread_id, ticket=ticket)
        return ticket

    def release(self, thread_id: int) -> None:
        if self.debug and self._owner != thread_id:
            raise LockUsageError(
                f"thread {thread_id} released a lock held by {self._owner}"
            )
        my_i = self._holding[thread_id]
        if my_i < 0:
            raise LockUsageError(f"thread {thread_id} does not hold this lock")
        self._holding[thread_id] = -1
        if self.debug:
            self._owner = -1
        hooks.fire("clh.release", thread_id)
        self._records[my_i].locked = False


class _McsNode:
    __slots__ = ("locked", "next")

    def __init__(self):
        self.locked = False
        self.next = -1


class McsLock:
    """MCS queue lock: one node per thread, waiters spin on their own node.

    The releaser hands off through the successor's flag; when no
    successor is linked yet it resolves the race with a compare-and-swap
    on the tail and otherwise waits for the late link.
    """

    YIELD_POINTS = ("mcs.enqueue", "mcs.spin", "mcs.granted", "mcs.release", "mcs.linkwait")

    def __init__(self, n_threads: int, debug: bool = False, ticketing: bool = False):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self.debug = debug
        self.ticketing = ticketing
        self._nodes = [_McsNode() for _ in range(n_threads)]
        self._tail = AtomicWord(NULL_INDEX)
        self._owner = -1
        self._held = [False] * n_threads

    def acquire(self, thread_id: int) -> int:
        node = self._nodes[thread_id]
        node.locked = True
        node.next = -1
        if self.ticketing:
            pred_i, ticket = self._tail.exchange_ticketed(thread_id)
        else:
            pred_i, ticket = self._tail.exchange(thread_id), 0
        hooks.fire("mcs.enqueue", thread_id, pred=pred_i)
        if pred_i != NULL_INDEX:
            self._nodes[pred_i].next = thread_id
            bo = Backoff()
            while node.locked:
                hooks.fire("mcs.spin", thread_id, cell=thread_id, own=thread_id)
                bo.spin()
        self._held[thread_id] = True
        if self.debug:
            self._owner = thread_id
        hooks.fire("mcs.granted", thread_id, ticket=ticket)
        return ticket

    def release(self, thread_id: int) -> None:
        if self.debug and self._owner != thread_id:
            raise LockUsageError(
                f"thread {thread_id} released a lock held by {self._owner}"
            )
        if not self._held[thread_id]:
            raise LockUsageError(f"thread {thread_id} does not hold this lock")
        self._held[thread_id] = False
        if self.debug:
            self._owner = -1
        node = self._nodes[thread_id]
        hooks.fire("mcs.release", thread_id)
        if node.next == -1:
            if self._tail.compare_and_swap(thread_id, NULL_INDEX):
                return
            while node.next == -1:  # enqueuer swapped in; wait for its link
                hooks.fire("mcs.linkwait", thread_id)
                yield_cpu()
        self._nodes[node.next].locked = False


def lock_acquire(lock, thread_id: int) -> int:
    return lock.acquire(thread_id)


def lock_release(lock, thread_id: int) -> None:
    lock.release(thread_id)
