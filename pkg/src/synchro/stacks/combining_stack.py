"""Stacks serialized by a single combining object.

Push and pop contend on the same end, so one combining instance serves
both (two instances would still serialize through the shared top).
The sequential object owns the top reference and the node pool.
"""

from ..combining import CCSynchObject, DSMSynchObject, HSynchObject
from ..runtime.pool import NodePool, PoolEmptyError, is_null, null_ref
from ..signals import EMPTY

OP_PUSH = 1
OP_POP = 2

PUSH_OK = 1
PUSH_FULL = 0


class TopSide:
    """Sequential push/pop over a linked top; state is (top_ref,)."""

    opcodes = frozenset({OP_PUSH, OP_POP})

    def __init__(self, pool: NodePool):
        self.pool = pool
        self.initial = (null_ref(),)

    def apply(self, state, opcode, argument):
        (top,) = state
        pool = self.pool
        if opcode == OP_PUSH:
            try:
                ref = pool.alloc()
            except PoolEmptyError:
                return state, PUSH_FULL
            node = pool.node(ref)
            node.value = argument
            node.next.store(top)
            return (ref,), PUSH_OK
        # OP_POP
        if is_null(top):
            return state, None
        node = pool.node(top)
        value = node.value
        nxt = node.next.load()
        pool.free(top)
        return (nxt,), value


class CombiningStack:
    def __init__(self, make_combiner, n_threads: int, pool_capacity: int):
        if pool_capacity < 2 * n_threads:
            raise ValueError(
                f"pool_capacity must be at least 2*n_threads, got {pool_capacity}"
            )
        self.n_threads = n_threads
        self._pool = NodePool(pool_capacity)
        self._obj = make_combiner(TopSide(self._pool))

    def push(self, value: int, thread_id: int) -> None:
        if self._obj.apply(OP_PUSH, value, thread_id) != PUSH_OK:
            raise PoolEmptyError("stack node pool exhausted")

    def pop(self, thread_id: int):
        rv = self._obj.apply(OP_POP, 0, thread_id)
        return EMPTY if rv is None else rv


class CCStack(CombiningStack):
    YIELD_POINTS = CCSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int, h_bound: int | None = None):
        super().__init__(
            lambda seq: CCSynchObject(seq, n_threads, h_bound),
            n_threads, pool_capacity,
        )


class DSMStack(CombiningStack):
    YIELD_POINTS = DSMSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int, h_bound: int | None = None):
        super().__init__(
            lambda seq: DSMSynchObject(seq, n_threads, h_bound),
            n_threads, pool_capacity,
        )


class HStack(CombiningStack):
    YIELD_POINTS = HSynchObject.YIELD_POINTS

    def __init__(self, n_threads: int, pool_capacity: int,
                 group_size: int | None = None, h_bound: int | None = None):
        super().__init__(
            lambda seq: HSynchObject(seq, n_threads, group_size, h_bound),
            n_threads, pool_capacity,
        )
