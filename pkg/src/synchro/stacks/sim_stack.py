"""Wait-free LIFO stack over one PSim core.

A batch mixes pushes and pops.  Pushes prepend privately allocated,
privately linked nodes, so the whole new top chain is fully
materialized before the install — unlike the queue there is never a
pending cross-batch link, because prepending only writes into the
batch's own nodes.  Pops walk links that are immutable once published.
Winners free the popped nodes (including nodes both pushed and popped
inside the batch, which were never visible); losers free everything
they allocated.
"""

from ..combining.psim import SimCore, sim_yield_points
from ..runtime import hooks
from ..runtime.pool import NodePool, PoolEmptyError, is_null, null_ref
from ..signals import EMPTY
from .combining_stack import OP_POP, OP_PUSH, PUSH_FULL, PUSH_OK


class SimStack:
    YIELD_POINTS = sim_yield_points("simstack")

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        self._core = SimCore(
            n_threads, (null_ref(),), self._combine, "simstack",
            on_commit=self._commit, on_abort=self._abort,
        )

    def _commit(self, ctx):
        allocated, popped = ctx
        pool = self._pool
        for ref in popped:
            pool.free(ref)

    def _abort(self, ctx):
        allocated, popped = ctx
        pool = self._pool
        for ref in allocated:
            pool.free(ref)

    def _combine(self, state, requests, rvals, thread_id):
        pool = self._pool
        (top,) = state
        allocated = []
        popped = []
        for q, opcode, argument in requests:
            hooks.fire("simstack.serve", thread_id)
            if opcode == OP_PUSH:
                try:
                    ref = pool.alloc()
                except PoolEmptyError:
                    rvals[q] = PUSH_FULL
                    continue
                allocated.append(ref)
                node = pool.node(ref)
                node.value = argument
                node.next.store(top)
                top = ref
                rvals[q] = PUSH_OK
            else:  # OP_POP
                if is_null(top):
                    rvals[q] = None
                    continue
                node = pool.node(top)
                rvals[q] = node.value
                popped.append(top)
                top = node.next.load()
        return (top,), (allocated, popped)

    def push(self, value: int, thread_id: int) -> None:
        if self._core.apply(OP_PUSH, value, thread_id) != PUSH_OK:
            raise PoolEmptyError("stack node pool exhausted")

    def pop(self, thread_id: int):
        rv = self._core.apply(OP_POP, 0, thread_id)
        return EMPTY if rv is None else rv
