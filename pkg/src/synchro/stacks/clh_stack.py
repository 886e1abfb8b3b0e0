"""Blocking stack: one CLH lock guarding the linked top."""

from ..locks import ClhLock
from ..runtime.pool import NodePool, is_null, null_ref
from ..signals import EMPTY


class ClhStack:
    YIELD_POINTS = ClhLock.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        self._top = null_ref()  # guarded by the lock
        self._lock = ClhLock(n_threads)

    def push(self, value: int, thread_id: int) -> None:
        pool = self._pool
        ref = pool.alloc()  # outside the lock: exhaustion leaves the stack intact
        pool.node(ref).value = value
        self._lock.acquire(thread_id)
        pool.node(ref).next.store(self._top)
        self._top = ref
        self._lock.release(thread_id)

    def pop(self, thread_id: int):
        pool = self._pool
        self._lock.acquire(thread_id)
        top = self._top
        if is_null(top):
            self._lock.release(thread_id)
            return EMPTY
        node = pool.node(top)
        value = node.value
        self._top = node.next.load()
        self._lock.release(thread_id)
        pool.free(top)  # unlinked, exclusively ours
        return value
