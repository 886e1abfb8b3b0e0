"""CLH and MCS queue locks: mutual exclusion you can measure.

The critical section increments a deliberately non-atomic counter.
Without a lock, CPython preempts between the read and the write and
updates get lost; under either queue lock the total is exact.  Tickets
(taken atomically at the enqueue point) expose the FIFO guarantee:
grant order must equal enqueue order.
"""

import sys

from synchro.locks import ClhLock, McsLock
from synchro.runtime import ThreadTeamConfig, spawn_team

T, N = 8, 5_000
sys.setswitchinterval(1e-4)  # provoke preemption inside the racy update


class Plain:
    def __init__(self):
        self.n = 0


print("== the race the locks must defeat ==")
racy = Plain()


def unlocked(tid):
    for _ in range(N):
        n = racy.n
        for _ in range(20):  # widen the read-to-write window
            pass
        racy.n = n + 1


spawn_team(ThreadTeamConfig(T), unlocked)
print(f"no lock:   counter = {racy.n:6d}  (expected {T * N}; "
      f"{T * N - racy.n} updates lost)")

for cls in (ClhLock, McsLock):
    lock = cls(T, ticketing=True)
    counter = Plain()
    grants = []

    def body(tid):
        for _ in range(N):
            ticket = lock.acquire(tid)
            n = counter.n
            for _ in range(20):  # same window, now protected
                pass
            counter.n = n + 1
            grants.append(ticket)  # appended in grant order, inside the CS
            lock.release(tid)

    spawn_team(ThreadTeamConfig(T), body)
    inversions = sum(1 for a, b in zip(grants, grants[1:]) if a > b)
    print(f"{cls.__name__:9s}: counter = {counter.n:6d}  "
          f"FIFO inversions = {inversions}")

print("\nCLH waiters spin on their predecessor's record; MCS waiters on")
print("their own node. Both grant strictly in enqueue order.")
