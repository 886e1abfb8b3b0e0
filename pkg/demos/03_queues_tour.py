"""Six concurrent FIFO queues under a producer/consumer race.

Four producers tag each value with (producer id, sequence number) and
four consumers drain concurrently.  Afterwards three facts must hold
for every kind: nothing lost, nothing duplicated, and each consumer
saw every producer's values in increasing sequence order.
"""

import threading
import time

from synchro.queues import EMPTY, QueueKind, q_dequeue, q_enqueue, q_new

P = C = 4
N = 5_000

for kind in QueueKind:
    q = q_new(kind, P + C, pool_capacity=P * N + 2 * (P + C))
    done = threading.Event()
    logs = [[] for _ in range(C)]

    def produce(tid):
        for seq in range(N):
            q_enqueue(q, (tid << 48) | seq, tid)

    def consume(cid):
        tid = P + cid
        log = logs[cid]
        while True:
            v = q_dequeue(q, tid)
            if v is EMPTY:
                if done.is_set() and (v := q_dequeue(q, tid)) is not EMPTY:
                    log.append(v)
                elif done.is_set():
                    return
                continue
            log.append(v)

    threads = [threading.Thread(target=produce, args=(t,)) for t in range(P)]
    threads += [threading.Thread(target=consume, args=(c,)) for c in range(C)]
    t0 = time.perf_counter()
    for t in threads:
        t.start()
    for t in threads[:P]:
        t.join()
    done.set()
    for t in threads[P:]:
        t.join()
    dt = time.perf_counter() - t0

    everything = sorted(v for log in logs for v in log)
    conserved = everything == sorted((p << 48) | s for p in range(P)
                                     for s in range(N))
    fifo = True
    for log in logs:
        last = {}
        for v in log:
            p, s = v >> 48, v & (1 << 48) - 1
            fifo &= last.get(p, -1) < s
            last[p] = s
    print(f"{kind.value:10s} conserved={conserved}  per-producer FIFO={fifo}  "
          f"{2 * P * N / dt / 1000:.0f} kops/s")

print("\ncc/dsm/h serialize each end with a combining object, sim is the")
print("wait-free construction, clh is a two-lock queue, ms is lock-free.")
