"""Two-lock blocking queue: one CLH lock per end of the shared list."""

from ..locks import ClhLock
from ..runtime.pool import NodePool, is_null
from ..signals import EMPTY


class ClhQueue:
    YIELD_POINTS = ClhLock.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        dummy = self._pool.alloc()
        self._head_ref = dummy  # guarded by head lock
        self._tail_ref = dummy  # guarded by tail lock
        self._head_lock = ClhLock(n_threads)
        self._tail_lock = ClhLock(n_threads)

    def enqueue(self, value: int, thread_id: int) -> None:
        pool = self._pool
        ref = pool.alloc()  # outside the lock: exhaustion leaves the queue intact
        pool.node(ref).value = value
        self._tail_lock.acquire(thread_id)
        pool.node(self._tail_ref).next.store(ref)
        self._tail_ref = ref
        self._tail_lock.release(thread_id)

    def dequeue(self, thread_id: int):
        pool = self._pool
        self._head_lock.acquire(thread_id)
        head = self._head_ref
        nxt = pool.node(head).next.load()
        if is_null(nxt):
            self._head_lock.release(thread_id)
            return EMPTY
        value = pool.node(nxt).value
        self._head_ref = nxt
        self._head_lock.release(thread_id)
        pool.free(head)  # unlinked dummy, exclusively ours
        return value
