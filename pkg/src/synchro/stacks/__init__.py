"""Concurrent LIFO stacks.

Six kinds behind one factory: combining-based (CC/DSM/H), wait-free
(SIM), CLH-lock-based, and the lock-free Treiber stack (LF).  Same
value/signal conventions as the queues.
"""

import enum

from ..runtime.pool import PoolEmptyError
from ..signals import EMPTY
from .clh_stack import ClhStack
from .combining_stack import CCStack, CombiningStack, DSMStack, HStack
from .lf_stack import LFStack
from .sim_stack import SimStack


class StackKind(enum.Enum):
    CC_STACK = "cc-stack"
    DSM_STACK = "dsm-stack"
    H_STACK = "h-stack"
    SIM_STACK = "sim-stack"
    CLH_STACK = "clh-stack"
    LF_STACK = "lf-stack"


def s_new(kind: StackKind, n_threads: int, group_size: int | None = None,
          pool_capacity: int | None = None):
    """Construct an empty stack of the given kind.

    pool_capacity should be at least 2*n_threads plus the expected
    maximum depth; it defaults to 2*n_threads + 1024.
    """
    if pool_capacity is None:
        pool_capacity = 2 * n_threads + 1024
    if kind is StackKind.CC_STACK:
        return CCStack(n_threads, pool_capacity)
    if kind is StackKind.DSM_STACK:
        return DSMStack(n_threads, pool_capacity)
    if kind is StackKind.H_STACK:
        return HStack(n_threads, pool_capacity, group_size)
    if kind is StackKind.SIM_STACK:
        return SimStack(n_threads, pool_capacity)
    if kind is StackKind.CLH_STACK:
        return ClhStack(n_threads, pool_capacity)
    if kind is StackKind.LF_STACK:
        return LFStack(n_threads, pool_capacity)
    raise ValueError(f"unknown stack kind {kind!r}")


def s_push(s, value: int, thread_id: int) -> None:
    s.push(value, thread_id)


def s_pop(s, thread_id: int):
    return s.pop(thread_id)


__all__ = [
    "StackKind",
    "s_new",
    "s_push",
    "s_pop",
    "EMPTY",
    "PoolEmptyError",
    "CCStack",
    "DSMStack",
    "HStack",
    "SimStack",
    "ClhStack",
    "LFStack",
    "CombiningStack",
]
