"""Sequential end-objects for list-based queues.

A queue is one linked node list with a dummy head; serializing the tail
side and the head side independently is enough, because the only point
of contact is the atomic `next` cell of the boundary node.  These two
objects are the sequential halves handed to whatever synchronizer a
queue kind uses (a combining object per end, or a lock per end).

Return-value convention (internal): enqueue returns 1 on success and 0
on pool exhaustion; dequeue returns the value or None when the list is
logically empty.  The queue front-ends translate these to the public
exception/sentinel forms.
"""

from ..runtime.pool import NodePool, PoolEmptyError, is_null

OP_ENQ = 1
OP_DEQ = 2

ENQ_OK = 1
ENQ_FULL = 0


class EnqSide:
    """Appends nodes after the current tail; state is (tail_ref,)."""

    opcodes = frozenset({OP_ENQ})

    def __init__(self, pool: NodePool, dummy_ref: int):
        self.pool = pool
        self.initial = (dummy_ref,)

    def apply(self, state, opcode, value):
        (tail_ref,) = state
        pool = self.pool
        try:
            ref = pool.alloc()
        except PoolEmptyError:
            return state, ENQ_FULL
        node = pool.node(ref)
        node.value = value
        # node.next is a fresh tagged null from alloc
        pool.node(tail_ref).next.store(ref)
        return (ref,), ENQ_OK


class DeqSide:
    """Advances the dummy head; state is (head_ref,)."""

    opcodes = frozenset({OP_DEQ})

    def __init__(self, pool: NodePool, dummy_ref: int):
        self.pool = pool
        self.initial = (dummy_ref,)

    def apply(self, state, opcode, _argument):
        (head_ref,) = state
        pool = self.pool
        nxt = pool.node(head_ref).next.load()
        if is_null(nxt):
            return state, None
        value = pool.node(nxt).value
        pool.free(head_ref)  # old dummy: nothing else references it
        return (nxt,), value
