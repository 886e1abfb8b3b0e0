"""PSim: wait-free combining via announce, toggle, and state swap.

Threads announce their request, flip their bit in a shared toggle word
with one fetch-and-add, and then try (at most twice) to install a new
state: copy the published state, apply *every* pending announcement to
the copy, and compare-and-swap the state pointer.  Helping makes it
wait-free: if both of a thread's install attempts are beaten, the
winning installs were computed from snapshots taken after its toggle
and therefore already include its operation.

Representation notes, which carry the correctness argument:

- `sp` is an atomic word packing a state-block index (low 16 bits) with
  a monotonic generation count (high 48 bits), so it never repeats.
- Each state block publishes an *immutable* `(applied, state, rvals)`
  tuple through a single attribute store, so readers always grab an
  internally consistent snapshot no matter how the copy races with a
  rewrite; staleness is caught by re-reading `sp`.
- Each thread alternates between two private blocks, switching only
  after a successful install, so a block that is (or was just)
  published is never the target of a rewrite before every reader of it
  could have noticed `sp` moving on.
- Return values live inside the published tuple, made visible by the
  install itself: a reader never depends on a post-install write, so a
  thread stalled right after winning the swap cannot strand anyone.

The toggle trick: a thread alternately adds +2**tid and -2**tid.  Only
the owner touches bit tid and the addition happens exactly when the bit
is clear (respectively set), so no carry ever crosses into another
thread's bit.

`SimCore` is the reusable engine; `PSimObject` instantiates it for a
sequential object whose pure apply is folded over each batch.  The
wait-free queue and stack supply their own batch functions (they
allocate pool nodes speculatively, so they also supply commit/abort
cleanup), but share every other line of the protocol.
"""

from ..runtime import hooks
from ..runtime.atomic import AtomicWord
from ..runtime.spin import Backoff, yield_cpu
from .request import COMPLETED, PENDING, CombineRequest
from .seqobj import check_opcode, check_thread

MAX_SIM_THREADS = 64  # the applied/pending toggle vector is one 64-bit word

_IDX_BITS = 16
_IDX_MASK = (1 << _IDX_BITS) - 1

DEFAULT_STATE_WORDS = 16  # 128-byte replicated block, in 64-bit words


def sim_yield_points(prefix: str) -> tuple:
    return (
        f"{prefix}.announce",
        f"{prefix}.toggle",
        f"{prefix}.attempt",
        f"{prefix}.serve",
        f"{prefix}.pre_swap",
        f"{prefix}.post_swap",
        f"{prefix}.done",
    )


class _StateBlock:
    __slots__ = ("payload",)

    def __init__(self, payload):
        self.payload = payload  # (applied, state, rvals) — always replaced whole


class SimCore:
    """The announce/toggle/swap engine.

    combine(state, requests, rvals, thread_id) -> (new_state, ctx)
        Applies every (tid, opcode, argument) in `requests` to `state`,
        writing per-thread results into the `rvals` list.  May run
        speculatively and concurrently with other combiners on private
        data, so it must not mutate shared structures non-idempotently.
    on_commit(ctx): winner-only cleanup after a successful install.
    on_abort(ctx): loser cleanup after a failed install.
    """

    def __init__(self, n_threads: int, initial_state, combine, prefix: str,
                 on_commit=None, on_abort=None):
        if not 1 <= n_threads <= MAX_SIM_THREADS:
            raise ValueError(
                f"n_threads must be in [1, {MAX_SIM_THREADS}], got {n_threads}"
            )
        self.n_threads = n_threads
        self.prefix = prefix
        self._combine = combine
        self._on_commit = on_commit
        self._on_abort = on_abort
        self._toggles = AtomicWord(0)
        self._blocks = [_StateBlock(None) for _ in range(2 * n_threads + 1)]
        self._blocks[2 * n_threads].payload = (0, initial_state, (0,) * n_threads)
        self._sp = AtomicWord(2 * n_threads)  # generation 0
        self._announce = [CombineRequest() for _ in range(n_threads)]
        self._parity = [0] * n_threads
        self._cursor = [0] * n_threads
        self._points = sim_yield_points(prefix)

    def canonical(self):
        """A published (applied, state, rvals) snapshot (validated read)."""
        while True:
            sp = self._sp.load()
            payload = self._blocks[sp & _IDX_MASK].payload
            if self._sp.load() == sp:
                return payload
            yield_cpu()

    def state(self):
        return self.canonical()[1]

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        req = self._announce[thread_id]
        req.opcode = opcode
        req.argument = argument
        req.status = PENDING
        hooks.fire(self._points[0], thread_id)  # announce

        parity = self._parity[thread_id] ^ 1
        self._parity[thread_id] = parity
        bit = 1 << thread_id
        self._toggles.fetch_add(bit if parity else -bit)
        hooks.fire(self._points[1], thread_id)  # toggle

        announce = self._announce
        blocks = self._blocks
        sp = self._sp
        rv = 0
        done = False
        bo = Backoff()
        for _ in range(2):
            hooks.fire(self._points[2], thread_id)  # attempt
            old = sp.load()
            applied, state, rvals = blocks[old & _IDX_MASK].payload
            if sp.load() != old:
                bo.spin()
                continue
            toggles = self._toggles.load()
            diffs = toggles ^ applied
            if not (diffs & bit):
                rv = rvals[thread_id]
                done = True
                break
            requests = []
            d = diffs
            while d:
                low = d & (-d)
                q = low.bit_length() - 1
                r = announce[q]
                requests.append((q, r.opcode, r.argument))
                d ^= low
            new_rvals = list(rvals)
            new_state, ctx = self._combine(state, requests, new_rvals, thread_id)
            mine = 2 * thread_id + self._cursor[thread_id]
            blocks[mine].payload = (toggles, new_state, tuple(new_rvals))
            hooks.fire(self._points[4], thread_id)  # pre_swap
            new_sp = ((((old >> _IDX_BITS) + 1) << _IDX_BITS) | mine)
            if sp.compare_and_swap(old, new_sp):
                self._cursor[thread_id] ^= 1
                hooks.fire(self._points[5], thread_id)  # post_swap
                if self._on_commit is not None:
                    self._on_commit(ctx)
                rv = new_rvals[thread_id]
                done = True
                break
            if self._on_abort is not None:
                self._on_abort(ctx)
            bo.spin()
        if not done:
            # both attempts were beaten, so a winner computed from a
            # snapshot taken after our toggle has installed our result
            while True:
                cur = sp.load()
                applied, _state, rvals = blocks[cur & _IDX_MASK].payload
                if ((applied >> thread_id) & 1) == parity:
                    rv = rvals[thread_id]
                    break
                yield_cpu()
        req.status = COMPLETED
        hooks.fire(self._points[6], thread_id)  # done
        return rv


class PSimObject:
    """Wait-free combining object over a pure sequential object."""

    YIELD_POINTS = sim_yield_points("psim")

    def __init__(self, seq, n_threads: int, state_words: int = DEFAULT_STATE_WORDS):
        if len(seq.initial) > state_words:
            raise ValueError(
                f"state needs {len(seq.initial)} words, block holds {state_words}"
            )
        self.n_threads = n_threads
        self.state_words = state_words
        self._seq = seq

        def combine(state, requests, rvals, thread_id):
            seq_apply = seq.apply
            for q, opcode, argument in requests:
                hooks.fire("psim.serve", thread_id)
                state, rv = seq_apply(state, opcode, argument)
                rvals[q] = rv
            return state, None

        self._core = SimCore(n_threads, seq.initial, combine, "psim")

    def apply(self, opcode: int, argument: int, thread_id: int) -> int:
        check_thread(thread_id, self.n_threads)
        check_opcode(self._seq, opcode)
        return self._core.apply(opcode, argument, thread_id)

    def snapshot(self):
        """Current sequential state (safe at any time: validated read)."""
        return self._core.state()
