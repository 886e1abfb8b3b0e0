"""Sequential objects: the things combining objects make concurrent.

A sequential object exposes an immutable initial state (a tuple of
64-bit words) and a pure transition function
``apply(state, opcode, argument) -> (new_state, return_value)``.
Purity matters: the wait-free construction runs apply speculatively on
private copies and discards losers, so apply must be deterministic and
free of side effects.  The blocking combiners only ever run it once per
operation, but share the same protocol.

Opcode 0 is reserved for READ (no state change) across all objects.
"""

from ..runtime.atomic import MASK64

OP_READ = 0


class UnknownOpcodeError(Exception):
    """Operation announced with an opcode the object does not define."""


class SeqCounter:
    """64-bit wrapping counter.

    ADD returns the value held before the addition (fetch-and-add
    semantics); READ returns the current value.
    """

    OP_ADD = 1

    opcodes = frozenset({OP_READ, OP_ADD})
    initial = (0,)

    @staticmethod
    def apply(state, opcode, argument):
        (value,) = state
        if opcode == SeqCounter.OP_ADD:
            return ((value + argument) & MASK64,), value
        return state, value


def check_opcode(seq, opcode) -> None:
    if opcode not in seq.opcodes:
        raise UnknownOpcodeError(f"opcode {opcode} not in {sorted(seq.opcodes)}")


def check_thread(tid: int, n_threads: int) -> None:
    if not 0 <= tid < n_threads:
        raise ValueError(f"thread id {tid} not registered (n_threads={n_threads})")
