"""Michael-Scott lock-free FIFO queue.

Head, tail, and every link are tagged packed references into the node
pool, so a compare-and-swap against a recycled node fails instead of
landing (the pool bumps the tag on every allocation).  The tail may lag
the true last node by at most one link; both enqueuers and dequeuers
help swing it forward.
"""

from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.pool import NodePool, is_null
from ..runtime.spin import Backoff
from ..signals import EMPTY


class MSQueue:
    YIELD_POINTS = (
        "msq.enq.read",
        "msq.enq.link",
        "msq.enq.swing",
        "msq.deq.read",
        "msq.deq.swing",
        "msq.deq.cas",
    )

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        dummy = self._pool.alloc()
        self._head = AtomicWord(dummy)
        self._tail = AtomicWord(dummy)

    def enqueue(self, value: int, thread_id: int) -> None:
        pool = self._pool
        ref = pool.alloc()
        node = pool.node(ref)
        node.value = value
        tail = self._tail
        bo = Backoff()
        while True:
            t = tail.load()
            next_cell = pool.node(t).next
            tn = next_cell.load()
            hooks.fire("msq.enq.read", thread_id)
            if t != tail.load():
                continue
            if is_null(tn):
                if next_cell.compare_and_swap(tn, ref):
                    hooks.fire("msq.enq.link", thread_id)
                    tail.compare_and_swap(t, ref)
                    return
            else:
                hooks.fire("msq.enq.swing", thread_id)
                tail.compare_and_swap(t, tn)
                continue
            bo.spin()

    def dequeue(self, thread_id: int):
        pool = self._pool
        head, tail = self._head, self._tail
        bo = Backoff()
        while True:
            h = head.load()
            t = tail.load()
            hn = pool.node(h).next.load()
            hooks.fire("msq.deq.read", thread_id)
            if h != head.load():
                continue
            if h == t:
                if is_null(hn):
                    return EMPTY
                hooks.fire("msq.deq.swing", thread_id)
                tail.compare_and_swap(t, hn)
                continue
            # read the value before the swing: a successful CAS proves the
            # successor was not recycled in between
            value = pool.node(hn).value
            if head.compare_and_swap(h, hn):
                hooks.fire("msq.deq.cas", thread_id)
                pool.free(h)
                return value
            bo.spin()
