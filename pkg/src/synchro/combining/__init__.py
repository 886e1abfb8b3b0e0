"""Combining objects: one thread applies batches of announced operations.

Five constructions over the same sequential-object protocol:

- CCSynchObject / DSMSynchObject / HSynchObject — blocking combiners
  with bounded stints (CC spins on handed-over records, DSM on a
  thread's own node, H adds a per-group hierarchy behind a global lock)
- OyamaObject — blocking, lock plus detached announcement stack
- PSimObject — wait-free, announce/toggle/swap with helping
"""

from .ccsynch import CCSynchObject, default_h_bound
from .dsmsynch import DSMSynchObject
from .hsynch import HSynchObject
from .oyama import OyamaObject
from .psim import (
    DEFAULT_STATE_WORDS,
    MAX_SIM_THREADS,
    PSimObject,
    SimCore,
    sim_yield_points,
)
from .request import COMPLETED, PENDING, CombineRequest
from .seqobj import OP_READ, SeqCounter, UnknownOpcodeError

__all__ = [
    "CCSynchObject",
    "DSMSynchObject",
    "HSynchObject",
    "OyamaObject",
    "PSimObject",
    "SimCore",
    "SeqCounter",
    "CombineRequest",
    "UnknownOpcodeError",
    "OP_READ",
    "PENDING",
    "COMPLETED",
    "MAX_SIM_THREADS",
    "DEFAULT_STATE_WORDS",
    "default_h_bound",
    "sim_yield_points",
]


def cc_apply(obj: CCSynchObject, opcode: int, argument: int, thread_id: int) -> int:
    return obj.apply(opcode, argument, thread_id)


def dsm_apply(obj: DSMSynchObject, opcode: int, argument: int, thread_id: int) -> int:
    return obj.apply(opcode, argument, thread_id)


def h_apply(obj: HSynchObject, opcode: int, argument: int, thread_id: int) -> int:
    return obj.apply(opcode, argument, thread_id)


def psim_apply(obj: PSimObject, opcode: int, argument: int, thread_id: int) -> int:
    return obj.apply(opcode, argument, thread_id)


def oyama_apply(obj: OyamaObject, opcode: int, argument: int, thread_id: int) -> int:
    return obj.apply(opcode, argument, thread_id)
