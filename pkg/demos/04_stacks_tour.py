"""Six concurrent LIFO stacks, plus the small-scope linearizability oracle.

The concurrent part checks conservation (multiset in == multiset out).
The exhaustive part is the strong oracle: for tiny programs it checks
*every* interleaving against a sequential stack, and for real recorded
concurrent histories it searches for a valid linearization.
"""

from synchro.lincheck import (
    SequentialStack,
    check_sequential_interleavings,
    linearizable,
    record_history,
)
from synchro.runtime import ThreadTeamConfig, spawn_team
from synchro.signals import EMPTY
from synchro.stacks import StackKind, s_new

T, N = 8, 5_000

print("== conservation under a push/pop race ==")
for kind in StackKind:
    s = s_new(kind, T, pool_capacity=4 * T + 64)
    logs = [[] for _ in range(T)]

    def body(tid):
        log = logs[tid]
        for seq in range(N):
            s.push((tid << 48) | seq, tid)
            v = s.pop(tid)
            if v is not EMPTY:
                log.append(v)

    spawn_team(ThreadTeamConfig(T), body)
    residue = []
    while (v := s.pop(0)) is not EMPTY:
        residue.append(v)
    got = sorted([v for log in logs for v in log] + residue)
    want = sorted((t << 48) | q for t in range(T) for q in range(N))
    print(f"{kind.value:10s} conserved={got == want}")


def stack_ops(impl, tid, op, arg):
    if op == "push":
        impl.push(arg, tid)
        return None
    return impl.pop(tid)


print("\n== exhaustive small-scope checking (lf-stack) ==")
programs = [
    [("push", 1), ("pop", 0)],
    [("push", 2), ("pop", 0)],
    [("pop", 0), ("push", 3)],
]
n = check_sequential_interleavings(
    programs, lambda: s_new(StackKind.LF_STACK, 3, pool_capacity=32),
    stack_ops, SequentialStack)
print(f"all {n} interleavings of 3 threads x 2 ops match the model")

ok = 0
for events in record_history(
        programs, lambda: s_new(StackKind.LF_STACK, 3, pool_capacity=32),
        stack_ops, repeat=50):
    assert linearizable(events, SequentialStack)
    ok += 1
print(f"{ok} real concurrent histories recorded, all linearizable")
