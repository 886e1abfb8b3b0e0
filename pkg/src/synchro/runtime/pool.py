"""Fixed-capacity node pool with tag-versioned packed references.

Structures built here never free memory to a general allocator; they
recycle link nodes through a pool whose references pack a 48-bit node
index with a 16-bit tag.  The pool's free list is a Treiber stack whose
head tag increments on every successful pop, so a reference handed out
for a node always differs from any reference to the node's previous
life.  Stale compare-and-swaps on recycled nodes therefore fail instead
of landing (the ABA defence), up to the accepted 2**16 tag-wrap window.

On allocation a node's `next` cell is reset to a *tagged* null carrying
the pop tag.  Null refs must carry fresh tags for the same reason node
refs do: a queue's "link in a new node after the tail" CAS uses the
observed null as its expected value.
"""

from .atomic import AtomicWord
from .spin import Backoff

INDEX_BITS = 48
TAG_BITS = 16
INDEX_MASK = (1 << INDEX_BITS) - 1
TAG_MASK = (1 << TAG_BITS) - 1
NULL_INDEX = INDEX_MASK


class PoolEmptyError(Exception):
    """Allocation attempted on an exhausted pool."""


def pack(index: int, tag: int) -> int:
    return ((tag & TAG_MASK) << INDEX_BITS) | index


def ref_index(ref: int) -> int:
    return ref & INDEX_MASK


def ref_tag(ref: int) -> int:
    return ref >> INDEX_BITS


def is_null(ref: int) -> bool:
    return (ref & INDEX_MASK) == NULL_INDEX


def null_ref(tag: int = 0) -> int:
    return pack(NULL_INDEX, tag)


class Node:
    """Pooled link node.

    `value` and `key` are caller-owned 64-bit payload words; `next` is
    an atomic packed reference (list link in use, free-list link while
    pooled).  `owner` is a plain diagnostic field for ownership-stress
    tests; the library itself never reads it.
    """

    __slots__ = ("index", "value", "key", "next", "owner")

    def __init__(self, index: int):
        self.index = index
        self.value = 0
        self.key = 0
        self.next = AtomicWord(null_ref())
        self.owner = -1


class NodePool:
    """Fixed array of nodes behind a tagged lock-free free list."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        if capacity >= NULL_INDEX:
            raise ValueError("capacity exceeds index space")
        self.capacity = capacity
        self.nodes = [Node(i) for i in range(capacity)]
        for i in range(capacity - 1):
            self.nodes[i].next.store(pack(i + 1, 0))
        self.nodes[capacity - 1].next.store(null_ref())
        self.head = AtomicWord(pack(0, 0))

    def node(self, ref: int) -> Node:
        return self.nodes[ref & INDEX_MASK]

    def alloc(self) -> int:
        """Pop a free node; returns its packed reference.

        Raises PoolEmptyError on exhaustion.  Callers size pools as
        threads x in-flight bound plus expected structure length.
        """
        bo = Backoff()
        while True:
            head = self.head.load()
            idx = head & INDEX_MASK
            if idx == NULL_INDEX:
                raise PoolEmptyError(f"pool of {self.capacity} nodes exhausted")
            nxt = self.nodes[idx].next.load()
            new_tag = (ref_tag(head) + 1) & TAG_MASK
            if self.head.compare_and_swap(head, pack(nxt & INDEX_MASK, new_tag)):
                node = self.nodes[idx]
                node.next.store(null_ref(new_tag))
                return pack(idx, new_tag)
            bo.spin()

    def free(self, ref: int) -> None:
        """Push a node back; the caller must hold its only live reference."""
        idx = ref & INDEX_MASK
        if idx >= self.capacity:
            raise ValueError(f"bad node reference {ref:#x}")
        node = self.nodes[idx]
        bo = Backoff()
        while True:
            head = self.head.load()
            node.next.store(head)
            # pushes keep the head tag; only pops advance it
            if self.head.compare_and_swap(head, pack(idx, ref_tag(head))):
                return
            bo.spin()


def pool_alloc(pool: NodePool) -> int:
    return pool.alloc()


def pool_free(pool: NodePool, ref: int) -> None:
    pool.free(ref)
