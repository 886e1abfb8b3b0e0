"""DSM-Synch combining object.

Like CC-Synch, one thread serves a list of announced requests, but each
thread announces in a node it owns and spins on its *own* node's wait
cell (local spinning, the variant suited to cache-incoherent NUMA), and
the request list tolerates nodes whose link is attached after the swap:
a combiner that reaches a node with no successor first tries to detach
the list and, failing that, waits for the late link to appear.

Each thread owns exactly two nodes per object and alternates them; a
node is reused only after its owner observed completion, and the
combiner resolves a node's successor before releasing its owner, so a
released node is never read again by anyone else.
"""

from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.pool import NULL_INDEX
from ..runtime.spin import Backoff, yield_cpu
from .request import COMPLETED, NO_NEXT, PENDING, CombineRequest
from .seqobj import check_opcode, check_thread
from .ccsynch import default_h_bound


class DSMSynchObject:
    YIELD_POINTS = (
        "dsm.announce",
        "dsm.spin",
        "dsm.serve",
        "dsm.linkwait",
        "dsm.handoff",
        "dsm.done",
    )

    def __init__(self, seq, n_threads: int, h_bound: int | None = None):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self.h_bound = h_bound if h_bound is not None else default_h_bound(n_threads)
        if self.h_bound < 1:
            raise ValueError("h_bound must be positive")
        self._seq = seq
        self._state = seq.initial
        self._records = [CombineRequest() for _ in range(2 * n_threads)]
        self._flip = [0] * n_threads
        self._tail = AtomicWord(NULL_INDEX)  # empty list

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        check_thread(thread_id, self.n_threads)
        check_opcode(self._seq, opcode)
        recs = self._records

        flip = self._flip[thread_id]
        self._flip[thread_id] = flip ^ 1
        my_i = 2 * thread_id + flip
        my = recs[my_i]
        my.wait = True
        my.status = PENDING
        my.next = NO_NEXT
        my.opcode = opcode
        my.argument = argument

        pred_i = self._tail.exchange(my_i)
        hooks.fire("dsm.announce", thread_id)
        if pred_i != NULL_INDEX:
            recs[pred_i].next = my_i  # late link: predecessor may be waiting on it
            bo = Backoff()
            while my.wait:
                hooks.fire("dsm.spin", thread_id)
                bo.spin()
            if my.status == COMPLETED:
                hooks.fire("dsm.done", thread_id)
                return my.ret
        else:
            my.wait = False

        # combiner stint starting at our own node
        state = self._state
        seq_apply = self._seq.apply
        h = self.h_bound
        tmp_i, tmp = my_i, my
        count = 0
        while True:
            hooks.fire("dsm.serve", thread_id)
            state, rv = seq_apply(state, tmp.opcode, tmp.argument)
            tmp.ret = rv
            tmp.status = COMPLETED
            count += 1
            nxt_i = tmp.next
            if nxt_i == NO_NEXT:
                self._state = state  # publish before making the list claimable
                if self._tail.compare_and_swap(tmp_i, NULL_INDEX):
                    tmp.wait = False
                    break
                # someone swapped in behind tmp but has not linked yet
                while tmp.next == NO_NEXT:
                    hooks.fire("dsm.linkwait", thread_id)
                    yield_cpu()
                nxt_i = tmp.next
            tmp.wait = False  # successor resolved: owner may reuse the node
            if count >= h:
                self._state = state
                hooks.fire("dsm.handoff", thread_id)
                recs[nxt_i].wait = False  # pending: its owner combines next
                break
            tmp_i, tmp = nxt_i, recs[nxt_i]
        hooks.fire("dsm.done", thread_id)
        return my.ret

    def snapshot(self):
        """Current sequential state; call only at quiescence."""
        return self._state
