"""Tour of the runtime layer: atomic words, barriers, pools, teams.

Everything else in the library is built out of the pieces shown here.
"""

from synchro.runtime import (
    AtomicWord,
    Barrier,
    NodePool,
    ThreadTeamConfig,
    WorkKnob,
    now,
    random_work,
    ref_index,
    ref_tag,
    spawn_team,
)

print("== atomic words ==")
cell = AtomicWord(0)
print("fetch_add(5) returns the prior value:", cell.fetch_add(5))
print("load after the add:", cell.load())
print("compare_and_swap(5 -> 99):", cell.compare_and_swap(5, 99))
print("compare_and_swap(5 -> 1) now fails:", cell.compare_and_swap(5, 1))

print("\n== thread teams ==")
team = ThreadTeamConfig(n_threads=8)
shared = AtomicWord(0)
pre_values = spawn_team(team, lambda tid: shared.fetch_add(1))
print("8 threads fetch_add(1); pre-values:", sorted(pre_values))
print("final value (exactly one increment per thread):", shared.load())

print("\n== barriers ==")
bar = Barrier(4)
phases = spawn_team(ThreadTeamConfig(4), lambda tid: [bar.wait(), bar.wait()])
print("every thread observed the same phase indices:", phases)

print("\n== seeded local work (the contention knob) ==")
knob_a = WorkKnob(max_work=64, seed=2024)
knob_b = WorkKnob(max_work=64, seed=2024)
run_a = [random_work(knob_a, 0) for _ in range(6)]
run_b = [random_work(knob_b, 0) for _ in range(6)]
print("thread 0 draws:", run_a)
print("same seed, same thread, fresh knob:", run_b)
print("a different thread gets a different stream:",
      [random_work(knob_a, 1) for _ in range(6)])

print("\n== node pool with tagged references ==")
pool = NodePool(capacity=1)
ref1 = pool.alloc()
print(f"alloc -> node {ref_index(ref1)} tag {ref_tag(ref1)}")
pool.free(ref1)
ref2 = pool.alloc()
print(f"free + alloc reuses the node with a fresh tag: "
      f"node {ref_index(ref2)} tag {ref_tag(ref2)}")
print("stale references to the old life can never CAS successfully again")

print("\n== monotonic timing ==")
t0 = now()
t1 = now()
print(f"now() is monotonic nanoseconds: {t0} -> {t1} (delta {t1 - t0})")
