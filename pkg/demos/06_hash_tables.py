"""Per-bucket synchronized hash tables under mixed churn.

Both kinds share the chained-bucket layout and the splitmix64 mixer;
they differ in the per-bucket synchronizer (CLH queue lock vs a
DSM-Synch combining object).  After churn, full scans verify bucket
residency and table-wide key uniqueness, and the same single-threaded
trace must leave both kinds with identical content.
"""

from synchro.hashmap import HashKind, h_delete, h_insert, h_new, h_search, mix64
from synchro.runtime import ThreadTeamConfig, spawn_team
from synchro.runtime.work import XorShift64, derive_seed
from synchro.signals import NOT_FOUND

T, N, KEYS = 8, 10_000, 256

print(f"== {T} threads x {N} mixed ops (20/70/10 insert/search/delete) ==")
for kind in HashKind:
    table = h_new(kind, T, pool_capacity=4096)

    def body(tid):
        rng = XorShift64(derive_seed(7, tid))
        hits = 0
        for i in range(N):
            r = rng.next_below(10)
            key = rng.next_below(KEYS)
            if r < 2:
                h_insert(table, key, (key << 32) | i, tid)
            elif r < 9:
                if h_search(table, key, tid) is not NOT_FOUND:
                    hits += 1
            else:
                h_delete(table, key, tid)
        return hits

    hits = sum(spawn_team(ThreadTeamConfig(T), body))
    items = table.items()
    residency = all(b == (mix64(k) & (table.n_buckets - 1))
                    for b, k, _ in items)
    unique = len({k for _, k, _ in items}) == len(items)
    print(f"{kind.value:9s} entries={len(items):3d} search-hits={hits}  "
          f"bucket-residency={residency}  unique-keys={unique}")

print("\n== cross-kind agreement on one sequential trace ==")
rng = XorShift64(99)
trace = [(rng.next_below(10), rng.next_below(KEYS), rng.next())
         for _ in range(20_000)]
finals = []
for kind in HashKind:
    table = h_new(kind, 1, pool_capacity=2048)
    for r, key, value in trace:
        if r < 4:
            h_insert(table, key, value, 0)
        elif r < 8:
            h_search(table, key, 0)
        else:
            h_delete(table, key, 0)
    finals.append(sorted((k, v) for _, k, v in table.items()))
print("identical final content:", finals[0] == finals[1],
      f"({len(finals[0])} entries)")
