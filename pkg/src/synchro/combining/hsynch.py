"""H-Synch: hierarchical combining for grouped (NUMA-style) thread teams.

Threads are partitioned into groups of `group_size` consecutive ids.
Each group runs its own CC-Synch-style request list; the thread that
would combine for its group first takes a global CLH lock, so at most
one group combiner touches the shared state at a time and each lock
acquisition serves only that group's list.  Group combiners rotate in
plain CLH FIFO order.

With group_size == n_threads (one group) the behaviour degenerates to
CC-Synch over the same list discipline.
"""

from ..locks import ClhLock
from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.spin import Backoff
from .ccsynch import default_h_bound
from .request import COMPLETED, NO_NEXT, PENDING, CombineRequest
from .seqobj import check_opcode, check_thread


class _GroupList:
    __slots__ = ("records", "tail", "spare")

    def __init__(self, width: int):
        self.records = [CombineRequest() for _ in range(width + 1)]
        self.records[width].wait = False
        self.tail = AtomicWord(width)
        self.spare = list(range(width))


class HSynchObject:
    YIELD_POINTS = ("h.announce", "h.spin", "h.lock", "h.serve", "h.handoff", "h.done")

    def __init__(self, seq, n_threads: int, group_size: int | None = None,
                 h_bound: int | None = None):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self.group_size = group_size if group_size is not None else n_threads
        if self.group_size < 1:
            raise ValueError("group_size must be positive")
        self.h_bound = h_bound if h_bound is not None else default_h_bound(n_threads)
        self._seq = seq
        self._state = seq.initial
        n_groups = (n_threads + self.group_size - 1) // self.group_size
        self._groups = []
        for g in range(n_groups):
            width = min(self.group_size, n_threads - g * self.group_size)
            self._groups.append(_GroupList(width))
        self._global = ClhLock(n_groups)

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        check_thread(thread_id, self.n_threads)
        check_opcode(self._seq, opcode)
        gid = thread_id // self.group_size
        grp = self._groups[gid]
        local = thread_id % self.group_size
        recs = grp.records

        fresh_i = grp.spare[local]
        fresh = recs[fresh_i]
        fresh.wait = True
        fresh.next = NO_NEXT

        cur_i = grp.tail.exchange(fresh_i)
        cur = recs[cur_i]
        cur.opcode = opcode
        cur.argument = argument
        cur.status = PENDING
        hooks.fire("h.announce", thread_id)
        cur.next = fresh_i
        grp.spare[local] = cur_i

        bo = Backoff()
        while cur.wait:
            hooks.fire("h.spin", thread_id)
            bo.spin()
        if cur.status == COMPLETED:
            hooks.fire("h.done", thread_id)
            return cur.ret

        # group combiner: serialize against other groups' combiners
        self._global.acquire(gid)
        hooks.fire("h.lock", thread_id)
        state = self._state
        seq_apply = self._seq.apply
        h = self.h_bound
        tmp = cur
        count = 0
        while True:
            nxt_i = tmp.next
            if nxt_i == NO_NEXT or count >= h:
                break
            count += 1
            hooks.fire("h.serve", thread_id)
            state, rv = seq_apply(state, tmp.opcode, tmp.argument)
            tmp.ret = rv
            tmp.status = COMPLETED
            tmp.wait = False
            tmp = recs[nxt_i]
        self._state = state
        self._global.release(gid)
        hooks.fire("h.handoff", thread_id)
        tmp.wait = False
        hooks.fire("h.done", thread_id)
        return cur.ret

    def snapshot(self):
        """Current sequential state; call only at quiescence."""
        return self._state
