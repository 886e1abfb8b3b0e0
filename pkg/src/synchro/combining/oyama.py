"""Oyama-style combining: a lock plus a detached announcement stack.

Threads push their requests onto a lock-free announcement stack and
then compete for the lock.  Whoever holds the lock repeatedly detaches
the whole pending stack with one exchange and serves it, releasing the
lock only once the stack is observed empty, so announcements are never
lost; announcers whose request was served while they were waiting never
enter the critical section at all.
"""

from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.pool import NULL_INDEX
from ..runtime.spin import Backoff
from .request import COMPLETED, PENDING, CombineRequest
from .seqobj import check_opcode, check_thread


class OyamaObject:
    YIELD_POINTS = ("oyama.announce", "oyama.spin", "oyama.lock", "oyama.serve",
                    "oyama.unlock", "oyama.done")

    def __init__(self, seq, n_threads: int):
        if n_threads < 1:
            raise ValueError("n_threads must be positive")
        self.n_threads = n_threads
        self._seq = seq
        self._state = seq.initial
        self._records = [CombineRequest() for _ in range(n_threads)]
        self._lock = AtomicWord(0)
        self._pending = AtomicWord(NULL_INDEX)

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        check_thread(thread_id, self.n_threads)
        check_opcode(self._seq, opcode)
        recs = self._records
        rec = recs[thread_id]
        rec.opcode = opcode
        rec.argument = argument
        rec.status = PENDING

        bo = Backoff()
        while True:
            head = self._pending.load()
            rec.next = head  # stack link; NULL_INDEX terminates
            if self._pending.compare_and_swap(head, thread_id):
                break
            bo.spin()
        hooks.fire("oyama.announce", thread_id)

        bo.reset()
        while rec.status != COMPLETED:
            if self._lock.compare_and_swap(0, 1):
                hooks.fire("oyama.lock", thread_id)
                state = self._state
                seq_apply = self._seq.apply
                while True:
                    batch = self._pending.exchange(NULL_INDEX)
                    if batch == NULL_INDEX:
                        break
                    i = batch
                    while i != NULL_INDEX:
                        r = recs[i]
                        nxt = r.next  # read before completing: owner may re-announce
                        hooks.fire("oyama.serve", thread_id)
                        state, rv = seq_apply(state, r.opcode, r.argument)
                        r.ret = rv
                        r.status = COMPLETED
                        i = nxt
                self._state = state
                self._lock.store(0)
                hooks.fire("oyama.unlock", thread_id)
                # our request was pushed before we took the lock, so the
                # drain above (or an earlier holder) completed it
            else:
                hooks.fire("oyama.spin", thread_id)
                bo.spin()
        hooks.fire("oyama.done", thread_id)
        return rec.ret

    def snapshot(self):
        """Current sequential state; call only at quiescence."""
        return self._state
