"""Treiber lock-free LIFO stack with tagged references.

Push and pop are single compare-and-swaps on the top word.  ABA on pop
(top recycled back to the same node between read and CAS) is defeated
by the pool's allocation tags; failed CASes retry through exponential
backoff.
"""

from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.pool import NodePool, is_null, null_ref
from ..runtime.spin import Backoff
from ..signals import EMPTY


class LFStack:
    YIELD_POINTS = ("lfs.push.read", "lfs.push.cas", "lfs.pop.read", "lfs.pop.cas")

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        self._top = AtomicWord(null_ref())

    def push(self, value: int, thread_id: int) -> None:
        pool = self._pool
        ref = pool.alloc()
        node = pool.node(ref)
        node.value = value
        top = self._top
        bo = Backoff()
        while True:
            t = top.load()
            node.next.store(t)
            hooks.fire("lfs.push.read", thread_id)
            if top.compare_and_swap(t, ref):
                hooks.fire("lfs.push.cas", thread_id)
                return
            bo.spin()

    def pop(self, thread_id: int):
        pool = self._pool
        top = self._top
        bo = Backoff()
        while True:
            t = top.load()
            hooks.fire("lfs.pop.read", thread_id)
            if is_null(t):
                return EMPTY
            node = pool.node(t)
            nxt = node.next.load()
            value = node.value  # revalidated by the CAS: tags defeat recycling
            if top.compare_and_swap(t, nxt):
                hooks.fire("lfs.pop.cas", thread_id)
                pool.free(t)
                return value
            bo.spin()
