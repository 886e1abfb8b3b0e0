"""Wait-free FIFO queue over two PSim cores sharing one node list.

One core serializes enqueues (it owns the tail), the other dequeues
(it owns the dummy head).  A batch of enqueues is materialized as a
privately linked chain of fresh pool nodes, so racing combiners never
write into each other's nodes; losers free their chain and retry.

The one cross-batch link (old tail -> first node of the new batch)
cannot be written before the install wins, and the winner may stall
right after: instead the obligation is *carried in the published
enqueue state* as (from, expected, to) and materialized lazily by
whoever needs it, with a compare-and-swap whose expected value is the
from-node's allocation-time tagged null.  That guard makes replays
idempotent and makes a replay against a since-recycled node fail
instead of corrupting it.  By induction only the newest published
obligation can be unmaterialized at any moment.

Dequeue batches walk the physical links, crossing the one possibly
missing link virtually from a validated snapshot of the enqueue state;
emptiness is decided by the dequeue side alone from that snapshot
(a node with no physical or pending successor is the last).
"""

from ..combining.psim import SimCore, sim_yield_points
from ..runtime import hooks
from ..runtime.pool import NodePool, PoolEmptyError, is_null
from ..signals import EMPTY
from .shared_list import ENQ_FULL, ENQ_OK, OP_DEQ, OP_ENQ


class SimQueue:
    YIELD_POINTS = sim_yield_points("simq.enq") + sim_yield_points("simq.deq")

    def __init__(self, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        pool = self._pool = NodePool(pool_capacity)
        dummy = pool.alloc()
        # enqueue state: (tail_ref, link_from, link_expected, link_to)
        self._enq_core = SimCore(
            n_threads, (dummy, None, 0, 0), self._combine_enq, "simq.enq",
            on_abort=self._free_refs,
        )
        # dequeue state: (head_ref,)
        self._deq_core = SimCore(
            n_threads, (dummy,), self._combine_deq, "simq.deq",
            on_commit=self._free_refs,
        )

    def _free_refs(self, refs):
        if refs:
            pool = self._pool
            for ref in refs:
                pool.free(ref)

    @staticmethod
    def _materialize(pool, state):
        tail_ref, link_from, link_expected, link_to = state
        if link_from is not None:
            pool.node(link_from).next.compare_and_swap(link_expected, link_to)

    def _combine_enq(self, state, requests, rvals, thread_id):
        pool = self._pool
        self._materialize(pool, state)
        (tail_ref, _, _, _) = state
        allocated = []
        first = None
        last = None
        for q, _opcode, value in requests:
            hooks.fire("simq.enq.serve", thread_id)
            try:
                ref = pool.alloc()
            except PoolEmptyError:
                rvals[q] = ENQ_FULL
                continue
            allocated.append(ref)
            node = pool.node(ref)
            node.value = value
            if first is None:
                first = ref
            else:
                pool.node(last).next.store(ref)  # private pre-link
            last = ref
            rvals[q] = ENQ_OK
        if first is None:
            return state, allocated
        expected = pool.node(tail_ref).next.load()
        return (last, tail_ref, expected, first), allocated

    def _combine_deq(self, state, requests, rvals, thread_id):
        pool = self._pool
        e_state = self._enq_core.state()  # validated canonical snapshot
        _e_tail, e_from, _e_exp, e_to = e_state
        (head,) = state
        freed = []
        for q, _opcode, _argument in requests:
            hooks.fire("simq.deq.serve", thread_id)
            nxt = pool.node(head).next.load()
            if is_null(nxt):
                if e_from is not None and e_from == head:
                    nxt = e_to  # pending cross-batch link, crossed virtually
                else:
                    rvals[q] = None
                    continue
            rvals[q] = pool.node(nxt).value
            freed.append(head)
            head = nxt
        return (head,), freed

    def enqueue(self, value: int, thread_id: int) -> None:
        if self._enq_core.apply(OP_ENQ, value, thread_id) != ENQ_OK:
            raise PoolEmptyError("queue node pool exhausted")

    def dequeue(self, thread_id: int):
        rv = self._deq_core.apply(OP_DEQ, 0, thread_id)
        return EMPTY if rv is None else rv
