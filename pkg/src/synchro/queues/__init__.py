"""Concurrent FIFO queues.

Six kinds behind one factory: combining-based (CC/DSM/H), wait-free
(SIM, built on the PSim core), two-lock blocking (CLH), and lock-free
(MS).  Values are arbitrary 64-bit words; emptiness is the out-of-band
``EMPTY`` sentinel and pool exhaustion raises ``PoolEmptyError``.
"""

import enum

from ..runtime.pool import PoolEmptyError
from ..signals import EMPTY
from .clh_queue import ClhQueue
from .combining_queue import CCQueue, CombiningQueue, DSMQueue, HQueue
from .ms_queue import MSQueue
from .sim_queue import SimQueue


class QueueKind(enum.Enum):
    CC_QUEUE = "cc-queue"
    DSM_QUEUE = "dsm-queue"
    H_QUEUE = "h-queue"
    SIM_QUEUE = "sim-queue"
    CLH_QUEUE = "clh-queue"
    MS_QUEUE = "ms-queue"


def q_new(kind: QueueKind, n_threads: int, group_size: int | None = None,
          pool_capacity: int | None = None):
    """Construct an empty queue of the given kind.

    pool_capacity should be at least 2*n_threads plus the expected
    maximum queue length; it defaults to 2*n_threads + 1024.
    """
    if pool_capacity is None:
        pool_capacity = 2 * n_threads + 1024
    if kind is QueueKind.CC_QUEUE:
        return CCQueue(n_threads, pool_capacity)
    if kind is QueueKind.DSM_QUEUE:
        return DSMQueue(n_threads, pool_capacity)
    if kind is QueueKind.H_QUEUE:
        return HQueue(n_threads, pool_capacity, group_size)
    if kind is QueueKind.SIM_QUEUE:
        return SimQueue(n_threads, pool_capacity)
    if kind is QueueKind.CLH_QUEUE:
        return ClhQueue(n_threads, pool_capacity)
    if kind is QueueKind.MS_QUEUE:
        return MSQueue(n_threads, pool_capacity)
    raise ValueError(f"unknown queue kind {kind!r}")


def q_enqueue(q, value: int, thread_id: int) -> None:
    q.enqueue(value, thread_id)


def q_dequeue(q, thread_id: int):
    return q.dequeue(thread_id)


__all__ = [
    "QueueKind",
    "q_new",
    "q_enqueue",
    "q_dequeue",
    "EMPTY",
    "PoolEmptyError",
    "CCQueue",
    "DSMQueue",
    "HQueue",
    "SimQueue",
    "ClhQueue",
    "MSQueue",
    "CombiningQueue",
]
