"""CC-Synch combining object.

Announcers atomically swap a fresh record into the shared tail, write
their request into the record they received, and spin on that record's
wait cell.  A thread whose record comes back with the wait cell already
cleared and the request not completed is the combiner: it walks the
request list applying operations on behalf of the announcers, up to a
bounded number of records per stint, then hands the combiner role to
the owner of the record it stopped at.

Records migrate between threads (the classic swap-adoption scheme):
n_threads + 1 records circulate, and a thread adopts the record it
announced into as its fresh record for the next announcement.  Strict
two-records-per-thread alternation is unsound for this structure: a
thread would re-initialise a record while the previous announcer into
it could still be spinning there.
"""

from ..runtime import hooks
from ..runtime.spin import Backoff
from .request import COMPLETED, NO_NEXT, PENDING, CombineRequest
from .seqobj import check_opcode, check_thread
from ..runtime.atomic import AtomicWord


def default_h_bound(n_threads: int) -> int:
    """Max records a combiner serves per stint; bounds combiner latency."""
    return 3 * n_threads


class CCSynchObject:
    YIELD_POINTS = ("cc.announce", "cc.spin", "cc.serve", "cc.handoff", "cc.done")

    def __init__(self, seq, n_threads: int, h_bound: int | None = None):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self.h_bound = h_bound if h_bound is not None else default_h_bound(n_threads)
        if self.h_bound < 1:
            raise ValueError("h_bound must be positive")
        self._seq = seq
        self._state = seq.initial
        self._records = [CombineRequest() for _ in range(n_threads + 1)]
        # the initial tail record has wait cleared: its first announcer combines
        self._records[n_threads].wait = False
        self._tail = AtomicWord(n_threads)
        self._spare = list(range(n_threads))

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        check_thread(thread_id, self.n_threads)
        check_opcode(self._seq, opcode)
        recs = self._records

        fresh_i = self._spare[thread_id]
        fresh = recs[fresh_i]
        fresh.wait = True
        fresh.next = NO_NEXT

        cur_i = self._tail.exchange(fresh_i)
        cur = recs[cur_i]
        cur.opcode = opcode
        cur.argument = argument
        cur.status = PENDING
        hooks.fire("cc.announce", thread_id)
        cur.next = fresh_i  # publishes the request to the combiner
        self._spare[thread_id] = cur_i

        bo = Backoff()
        while cur.wait:
            hooks.fire("cc.spin", thread_id)
            bo.spin()
        if cur.status == COMPLETED:
            hooks.fire("cc.done", thread_id)
            return cur.ret

        # combiner stint: serve from our own record forward
        state = self._state
        seq_apply = self._seq.apply
        h = self.h_bound
        tmp = cur
        count = 0
        while True:
            nxt_i = tmp.next  # must be read before releasing tmp's owner
            if nxt_i == NO_NEXT or count >= h:
                break
            count += 1
            hooks.fire("cc.serve", thread_id)
            state, rv = seq_apply(state, tmp.opcode, tmp.argument)
            tmp.ret = rv
            tmp.status = COMPLETED
            tmp.wait = False
            tmp = recs[nxt_i]
        self._state = state  # published before the handoff below
        hooks.fire("cc.handoff", thread_id)
        tmp.wait = False  # status stays PENDING: its announcer combines next
        hooks.fire("cc.done", thread_id)
        return cur.ret

    def snapshot(self):
        """Current sequential state; call only at quiescence."""
        return self._state
