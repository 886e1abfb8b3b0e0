"""Fixed-capacity concurrent hash tables with per-bucket synchronizers.

Two kinds over the same chained-bucket layout: CLH_HASH guards each
bucket with a CLH queue lock; DSM_HASH serializes each bucket through a
DSM-Synch combining object.  Keys are unique table-wide, each residing
in exactly bucket ``mix64(key) & (n_buckets - 1)``.  The bucket count
is fixed at construction (power of two, default 1024); there is no
resizing.

The hash is the splitmix64 finalizer (constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB), chosen so layouts are reproducible across runs.

The combining variant announces (operation, key, value) as the opcode
plus the announcing thread's id; the key/value pair itself travels
through a per-thread staging slot, since both are full 64-bit words and
the announcement argument is a single word.  A staging slot is never
reused before its operation completes, so the handoff is race-free.

With ``record_ops=True`` every bucket keeps an append-only log of the
operations it served, in serialization order — test instrumentation for
the per-bucket linearization checks (adds contention; leave off
otherwise).  Scans (`items`) are quiescence-only.
"""

import enum

from .combining.dsmsynch import DSMSynchObject
from .locks import ClhLock
from .runtime.atomic import MASK64
from .runtime.pool import NodePool, PoolEmptyError, is_null, null_ref
from .signals import NOT_FOUND

MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB

OP_INSERT = 1
OP_DELETE = 2
OP_SEARCH = 3

_INSERTED = 1
_UPDATED = 2
_FULL = 0

DEFAULT_N_BUCKETS = 1024


def mix64(x: int) -> int:
    """splitmix64 avalanche finalizer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * MIX_MULT_1) & MASK64
    x ^= x >> 27
    x = (x * MIX_MULT_2) & MASK64
    return x ^ (x >> 31)


class HashKind(enum.Enum):
    CLH_HASH = "clh-hash"
    DSM_HASH = "dsm-hash"


class _ChainOps:
    """Walk/mutate one bucket's chain; caller provides serialization."""

    __slots__ = ("pool",)

    def __init__(self, pool: NodePool):
        self.pool = pool

    def search(self, head: int, key: int):
        pool = self.pool
        ref = head
        while not is_null(ref):
            node = pool.node(ref)
            if node.key == key:
                return node.value
            ref = node.next.load()
        return None

    def insert(self, head: int, key: int, value: int):
        """Returns (new_head, rv)."""
        pool = self.pool
        ref = head
        while not is_null(ref):
            node = pool.node(ref)
            if node.key == key:
                node.value = value
                return head, _UPDATED
            ref = node.next.load()
        try:
            ref = pool.alloc()
        except PoolEmptyError:
            return head, _FULL
        node = pool.node(ref)
        node.key = key
        node.value = value
        node.next.store(head)
        return ref, _INSERTED

    def delete(self, head: int, key: int):
        """Returns (new_head, removed)."""
        pool = self.pool
        prev = None
        ref = head
        while not is_null(ref):
            node = pool.node(ref)
            nxt = node.next.load()
            if node.key == key:
                if prev is None:
                    head = nxt
                else:
                    pool.node(prev).next.store(nxt)
                pool.free(ref)
                return head, 1
            prev = ref
            ref = nxt
        return head, 0


class _DsmBucket:
    """Sequential object for one bucket, argument = announcing thread id."""

    opcodes = frozenset({OP_INSERT, OP_DELETE, OP_SEARCH})

    __slots__ = ("chain", "stage", "initial", "log")

    def __init__(self, chain: _ChainOps, stage, log):
        self.chain = chain
        self.stage = stage
        self.initial = (null_ref(),)
        self.log = log

    def apply(self, state, opcode, announcer):
        (head,) = state
        key, value = self.stage[announcer]
        if opcode == OP_SEARCH:
            rv = self.chain.search(head, key)
            if self.log is not None:
                self.log.append((OP_SEARCH, key, rv))
            return state, rv
        if opcode == OP_INSERT:
            head, rv = self.chain.insert(head, key, value)
            if self.log is not None:
                self.log.append((OP_INSERT, key, value))
            return (head,), rv
        head, rv = self.chain.delete(head, key)
        if self.log is not None:
            self.log.append((OP_DELETE, key, rv))
        return (head,), rv


class HashTable:
    """Front-end over per-bucket synchronizers; see module docstring."""

    def __init__(self, kind: HashKind, n_threads: int,
                 n_buckets: int = DEFAULT_N_BUCKETS,
                 pool_capacity: int | None = None,
                 record_ops: bool = False):
        if n_buckets < 1 or n_buckets & (n_buckets - 1):
            raise ValueError("n_buckets must be a positive power of two")
        if pool_capacity is None:
            pool_capacity = max(4 * n_threads, 4096)
        self.kind = kind
        self.n_threads = n_threads
        self.n_buckets = n_buckets
        self._mask = n_buckets - 1
        self._pool = NodePool(pool_capacity)
        self._chain = _ChainOps(self._pool)
        self.oplogs = [[] for _ in range(n_buckets)] if record_ops else None

        if kind is HashKind.CLH_HASH:
            self.YIELD_POINTS = ClhLock.YIELD_POINTS
            self._heads = [null_ref()] * n_buckets  # guarded by bucket locks
            self._locks = [ClhLock(n_threads) for _ in range(n_buckets)]
        elif kind is HashKind.DSM_HASH:
            self.YIELD_POINTS = DSMSynchObject.YIELD_POINTS
            self._stage = [(0, 0)] * n_threads
            self._buckets = [
                DSMSynchObject(
                    _DsmBucket(self._chain, self._stage,
                               self.oplogs[b] if record_ops else None),
                    n_threads,
                )
                for b in range(n_buckets)
            ]
        else:
            raise ValueError(f"unknown hash kind {kind!r}")

    def _bucket(self, key: int) -> int:
        return mix64(key) & self._mask

    def insert(self, key: int, value: int, thread_id: int) -> bool:
        """Map key to value; True if the key was new, False if updated."""
        b = self._bucket(key)
        if self.kind is HashKind.CLH_HASH:
            lock = self._locks[b]
            lock.acquire(thread_id)
            try:
                head, rv = self._chain.insert(self._heads[b], key, value)
                self._heads[b] = head
                if self.oplogs is not None:
                    self.oplogs[b].append((OP_INSERT, key, value))
            finally:
                lock.release(thread_id)
        else:
            self._stage[thread_id] = (key, value)
            rv = self._buckets[b].apply(OP_INSERT, thread_id, thread_id)
        if rv == _FULL:
            raise PoolEmptyError("hash table chain pool exhausted")
        return rv == _INSERTED

    def delete(self, key: int, thread_id: int) -> bool:
        """Remove key; True if it was present."""
        b = self._bucket(key)
        if self.kind is HashKind.CLH_HASH:
            lock = self._locks[b]
            lock.acquire(thread_id)
            try:
                head, rv = self._chain.delete(self._heads[b], key)
                self._heads[b] = head
                if self.oplogs is not None:
                    self.oplogs[b].append((OP_DELETE, key, rv))
            finally:
                lock.release(thread_id)
            return rv == 1
        self._stage[thread_id] = (key, 0)
        return self._buckets[b].apply(OP_DELETE, thread_id, thread_id) == 1

    def search(self, key: int, thread_id: int):
        """Value mapped to key, or NOT_FOUND."""
        b = self._bucket(key)
        if self.kind is HashKind.CLH_HASH:
            lock = self._locks[b]
            lock.acquire(thread_id)
            try:
                rv = self._chain.search(self._heads[b], key)
                if self.oplogs is not None:
                    self.oplogs[b].append((OP_SEARCH, key, rv))
            finally:
                lock.release(thread_id)
        else:
            self._stage[thread_id] = (key, 0)
            rv = self._buckets[b].apply(OP_SEARCH, thread_id, thread_id)
        return NOT_FOUND if rv is None else rv

    def items(self) -> list:
        """[(bucket, key, value)] full scan; call only at quiescence."""
        pool = self._pool
        out = []
        for b in range(self.n_buckets):
            if self.kind is HashKind.CLH_HASH:
                ref = self._heads[b]
            else:
                (ref,) = self._buckets[b].snapshot()
            while not is_null(ref):
                node = pool.node(ref)
                out.append((b, node.key, node.value))
                ref = node.next.load()
        return out


def h_new(kind: HashKind, n_threads: int, **kwargs) -> HashTable:
    return HashTable(kind, n_threads, **kwargs)


def h_insert(t: HashTable, key: int, value: int, thread_id: int) -> bool:
    return t.insert(key, value, thread_id)


def h_delete(t: HashTable, key: int, thread_id: int) -> bool:
    return t.delete(key, thread_id)


def h_search(t: HashTable, key: int, thread_id: int):
    return t.search(key, thread_id)
