import os
import time

import pytest

from synchro.runtime import (
    Backoff,
    Barrier,
    NodePool,
    PoolEmptyError,
    TeamError,
    ThreadTeamConfig,
    WorkKnob,
    barrier_wait,
    derive_seed,
    effective_pin_policy,
    is_null,
    now,
    pack,
    random_work,
    ref_index,
    ref_tag,
    spawn_team,
)
from synchro.runtime.team import PIN_ENV_VAR


# ------------------------------------------------------------------ team

def test_spawn_team_single_thread():
    assert spawn_team(ThreadTeamConfig(1), lambda tid: tid) == [0]


def test_spawn_team_ids_positional():
    assert spawn_team(ThreadTeamConfig(4), lambda tid: tid) == [0, 1, 2, 3]


def test_spawn_team_shared_fetch_add():
    from synchro.runtime import AtomicWord

    cell = AtomicWord(0)
    results = spawn_team(ThreadTeamConfig(8), lambda tid: cell.fetch_add(1))
    assert sorted(results) == list(range(8))
    assert cell.load() == 8


def test_spawn_team_body_failure_names_thread():
    def body(tid):
        if tid == 2:
            raise RuntimeError("boom")
        return tid

    with pytest.raises(TeamError, match="thread 2"):
        spawn_team(ThreadTeamConfig(4), body)


def test_spawn_team_start_failure_names_thread(monkeypatch):
    import threading as _threading

    real_start = _threading.Thread.start

    def failing_start(self):
        if self.name == "team-2":
            raise RuntimeError("no more threads")
        real_start(self)

    monkeypatch.setattr(_threading.Thread, "start", failing_start)
    with pytest.raises(TeamError, match="start thread 2"):
        spawn_team(ThreadTeamConfig(4), lambda tid: tid)


def test_team_config_validation():
    with pytest.raises(ValueError):
        ThreadTeamConfig(0)
    with pytest.raises(ValueError):
        ThreadTeamConfig(513)
    with pytest.raises(ValueError):
        ThreadTeamConfig(2, pin_policy="weird")
    cfg = ThreadTeamConfig(8, group_size=4)
    assert [cfg.group_of(t) for t in range(8)] == [0, 0, 0, 0, 1, 1, 1, 1]


def test_pin_env_override(monkeypatch):
    cfg = ThreadTeamConfig(2, pin_policy="none")
    monkeypatch.setenv(PIN_ENV_VAR, "scatter")
    assert effective_pin_policy(cfg) == "scatter"
    monkeypatch.setenv(PIN_ENV_VAR, "bogus")
    with pytest.raises(ValueError):
        effective_pin_policy(cfg)
    monkeypatch.delenv(PIN_ENV_VAR)
    assert effective_pin_policy(cfg) == "none"


def test_compact_pinning_applies_when_supported():
    if not hasattr(os, "sched_getaffinity"):
        pytest.skip("no affinity API on this platform")
    cpus = sorted(os.sched_getaffinity(0))

    def body(tid):
        return sorted(os.sched_getaffinity(0))

    results = spawn_team(ThreadTeamConfig(4, pin_policy="compact"), body)
    for tid, got in enumerate(results):
        assert got == [cpus[tid % len(cpus)]]


# --------------------------------------------------------------- barrier

def test_barrier_single_waiter():
    b = Barrier(1)
    assert barrier_wait(b) == 0
    assert barrier_wait(b) == 1


def test_barrier_phases_consistent():
    b = Barrier(3)

    def body(tid):
        return [b.wait(), b.wait()]

    results = spawn_team(ThreadTeamConfig(3), body)
    assert results == [[0, 1]] * 3


def test_barrier_happens_before():
    b = Barrier(2)
    flags = [0, 0]

    def body(tid):
        flags[tid] = tid + 1
        b.wait()
        return flags[1 - tid]

    results = spawn_team(ThreadTeamConfig(2), body)
    assert results == [2, 1]


def test_barrier_phase_separation(fast_switch):
    """Nothing from phase p+1 is visible to a thread still in phase p."""
    n_threads, n_phases = 4, 20
    b = Barrier(n_threads)
    wrote = [[0] * n_threads for _ in range(n_phases + 1)]
    leaks = []

    def body(tid):
        for p in range(n_phases):
            # we have not entered the barrier yet, so no thread can have
            # passed it, so no later-phase flag may be set
            if any(any(row) for row in wrote[p + 1:]):
                leaks.append((tid, p))
            wrote[p][tid] = 1
            b.wait()

    spawn_team(ThreadTeamConfig(n_threads), body)
    assert leaks == []
    assert all(all(row) for row in wrote[:n_phases])


def test_barrier_validation():
    with pytest.raises(ValueError):
        Barrier(0)


# ------------------------------------------------------------------ work

def test_random_work_zero_max():
    knob = WorkKnob(0, seed=7)
    assert random_work(knob, 0) == 0


def test_random_work_deterministic_per_thread():
    a = WorkKnob(100, seed=42)
    b = WorkKnob(100, seed=42)
    triple_a = [random_work(a, 0) for _ in range(3)]
    triple_b = [random_work(b, 0) for _ in range(3)]
    assert triple_a == triple_b
    assert [random_work(a, 1) for _ in range(3)] != triple_a  # distinct stream


def test_random_work_range():
    knob = WorkKnob(64, seed=1)
    for _ in range(100_000):
        k = random_work(knob, 3)
        assert 0 <= k <= 64


def test_derive_seed_never_zero():
    assert derive_seed(0, 0) != 0


def test_work_knob_validation():
    with pytest.raises(ValueError):
        WorkKnob(-1, seed=0)


# --------------------------------------------------------------- backoff

def test_backoff_grows_and_caps():
    bo = Backoff(initial=1, cap=8)
    assert bo._cur == 1
    for _ in range(10):
        bo.spin()
    assert bo._cur == 8
    bo.reset()
    assert bo._cur == 1
    with pytest.raises(ValueError):
        Backoff(initial=0)
    with pytest.raises(ValueError):
        Backoff(initial=16, cap=8)


# ---------------------------------------------------------------- timing

def test_now_monotonic():
    t1 = now()
    t2 = now()
    assert t2 >= t1


def test_now_sleep_lower_bound():
    t1 = now()
    time.sleep(0.01)
    assert now() - t1 >= 10_000_000


def test_now_back_to_back_sanity():
    deltas = []
    for _ in range(100):
        t1 = now()
        deltas.append(now() - t1)
    assert min(deltas) < 1_000_000  # advisory sanity bound


# ------------------------------------------------------------------ pool

def test_pack_roundtrip():
    ref = pack(12345, 77)
    assert ref_index(ref) == 12345
    assert ref_tag(ref) == 77
    assert not is_null(ref)


def test_pool_forced_reuse_bumps_tag():
    pool = NodePool(1)
    r1 = pool.alloc()
    assert ref_index(r1) == 0
    pool.free(r1)
    r2 = pool.alloc()
    assert ref_index(r2) == 0
    assert ref_tag(r2) == (ref_tag(r1) + 1) & 0xFFFF


def test_pool_alloc_distinct_indices():
    pool = NodePool(64)
    refs = [pool.alloc() for _ in range(64)]
    assert len({ref_index(r) for r in refs}) == 64


def test_pool_exhaustion_raises():
    pool = NodePool(4)
    for _ in range(4):
        pool.alloc()
    with pytest.raises(PoolEmptyError):
        pool.alloc()


def test_pool_free_bad_ref():
    pool = NodePool(4)
    with pytest.raises(ValueError):
        pool.free(pack(9, 0))


def test_pool_alloc_resets_next_to_tagged_null():
    pool = NodePool(2)
    r = pool.alloc()
    assert is_null(pool.node(r).next.load())


def test_pool_concurrent_ownership_stress(fast_switch):
    """1e6 alloc/free events; no node ever observed with two owners."""
    pool = NodePool(32)
    n_threads, per_thread = 8, 62_500
    violations = []

    def body(tid):
        held = []
        for i in range(per_thread):
            if held and (i & 3) == 3:
                ref = held.pop()
                node = pool.node(ref)
                if node.owner != tid:
                    violations.append((tid, node.owner))
                node.owner = -1
                pool.free(ref)
            else:
                try:
                    ref = pool.alloc()
                except PoolEmptyError:
                    continue
                node = pool.node(ref)
                if node.owner != -1:
                    violations.append((tid, node.owner))
                node.owner = tid
                held.append(ref)
        for ref in held:
            pool.node(ref).owner = -1
            pool.free(ref)

    spawn_team(ThreadTeamConfig(n_threads), body)
    assert violations == []
    # every node accounted for after quiescence
    refs = [pool.alloc() for _ in range(32)]
    assert len({ref_index(r) for r in refs}) == 32
