"""Queues built from two combining objects over one shared node list.

Enqueues announce to a tail-side combining instance, dequeues to a
head-side instance, halving combining contention; a dequeue that finds
only the dummy reports empty.  The CC/DSM/H kinds differ only in which
combining object serializes each end.
"""

from ..combining import CCSynchObject, DSMSynchObject, HSynchObject
from ..runtime.pool import NodePool, PoolEmptyError
from ..signals import EMPTY
from .shared_list import ENQ_OK, OP_DEQ, OP_ENQ, DeqSide, EnqSide


class CombiningQueue:
    def __init__(self, make_combiner, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        dummy = self._pool.alloc()
        self._enq = make_combiner(EnqSide(self._pool, dummy))
        self._deq = make_combiner(DeqSide(self._pool, dummy))

    def enqueue(self, value: int, thread_id: int) -> None:
        if self._enq.apply(OP_ENQ, value, thread_id) != ENQ_OK:
            raise PoolEmptyError("queue node pool exhausted")

    def dequeue(self, thread_id: int):
        rv = self._deq.apply(OP_DEQ, 0, thread_id)
        return EMPTY if rv is None else rv


class CCQueue(CombiningQueue):
    YIELD_POINTS = CCSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int, h_bound: int | None = None):
        super().__init__(
            lambda seq: CCSynchObject(seq, n_threads, h_bound),
            n_threads, pool_capacity,
        )


class DSMQueue(CombiningQueue):
    YIELD_POINTS = DSMSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int, h_bound: int | None = None):
        super().__init__(
            lambda seq: DSMSynchObject(seq, n_threads, h_bound),
            n_threads, pool_capacity,
        )


class HQueue(CombiningQueue):
    YIELD_POINTS = HSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int,
                 group_size: int | None = None, h_bound: int | None = None):
        super().__init__(
            lambda seq: HSynchObject(seq, n_threads, group_size, h_bound),
            n_threads, pool_capacity,
        )
