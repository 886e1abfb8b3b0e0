import pytest

from synchro.locks import ClhLock, LockUsageError, McsLock, lock_acquire, lock_release
from synchro.runtime import ThreadTeamConfig, hooks, spawn_team

LOCKS = [("clh", ClhLock), ("mcs", McsLock)]
IDS = [name for name, _ in LOCKS]
CLASSES = [cls for _, cls in LOCKS]


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_ticket_sequence_single_thread(cls):
    lock = cls(1, ticketing=True)
    assert lock_acquire(lock, 0) == 0
    lock_release(lock, 0)
    assert lock_acquire(lock, 0) == 1
    lock_release(lock, 0)


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_handoff_between_threads(cls):
    lock = cls(2)
    lock.acquire(0)
    lock.release(0)
    spawn_team(ThreadTeamConfig(1), lambda tid: (lock.acquire(0), lock.release(0)))
    lock.acquire(1)
    lock.release(1)


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_mutual_exclusion_plain_counter(cls, fast_switch):
    n_threads, per_thread = 8, 2500
    lock = cls(n_threads)
    counter = {"n": 0}

    def body(tid):
        for _ in range(per_thread):
            lock.acquire(tid)
            n = counter["n"]  # plain read-modify-write: only the lock
            counter["n"] = n + 1  # makes this exact
            lock.release(tid)

    spawn_team(ThreadTeamConfig(n_threads), body)
    assert counter["n"] == n_threads * per_thread


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_fifo_grant_order_equals_ticket_order(cls, fast_switch):
    n_threads, per_thread = 8, 1250
    lock = cls(n_threads, ticketing=True)
    order = []

    def body(tid):
        for _ in range(per_thread):
            ticket = lock.acquire(tid)
            order.append(ticket)  # appended in grant order, under the lock
            lock.release(tid)

    spawn_team(ThreadTeamConfig(n_threads), body)
    assert len(order) == n_threads * per_thread
    assert order == sorted(order)  # zero inversions


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_release_by_non_owner_detected_in_debug(cls):
    lock = cls(2, debug=True)
    lock.acquire(0)
    with pytest.raises(LockUsageError):
        lock.release(1)
    lock.release(0)


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_release_without_hold_detected(cls):
    lock = cls(1)
    with pytest.raises(LockUsageError):
        lock.release(0)


def _contended_loop(lock, tid, rounds=100):
    acc = 0
    for _ in range(rounds):
        lock.acquire(tid)
        for _ in range(5000):  # holds the lock across a switch interval
            acc += 1
        lock.release(tid)
    return acc


def test_clh_local_spinning_site(fast_switch):
    """CLH waiters spin on the predecessor's record, never their own."""
    lock = ClhLock(4)
    log = hooks.HookLog(points=("clh.spin", "clh.enqueue"))
    with hooks.hooked(log):
        spawn_team(ThreadTeamConfig(4), lambda tid: _contended_loop(lock, tid))
    pred_of = {}
    spins = 0
    for point, tid, info in log.events:
        if point == "clh.enqueue":
            pred_of[tid] = info["pred"]
        else:
            spins += 1
            assert info["cell"] == pred_of[tid]
            assert info["cell"] != info["own"]
    assert spins > 0  # contention actually happened


def test_mcs_local_spinning_site(fast_switch):
    """MCS waiters spin on their own node."""
    lock = McsLock(4)
    log = hooks.HookLog(points=("mcs.spin",))
    with hooks.hooked(log):
        spawn_team(ThreadTeamConfig(4), lambda tid: _contended_loop(lock, tid))
    assert log.events, "contention actually happened"
    for _point, tid, info in log.events:
        assert info["cell"] == tid
        assert info["cell"] == info["own"]


@pytest.mark.parametrize("cls", CLASSES, ids=IDS)
def test_no_starvation_at_desk_scale(cls):
    """Every thread finishes its quota well inside the watchdog budget."""
    import time

    n_threads, per_thread = 16, 500
    lock = cls(n_threads)
    done = [0] * n_threads

    def body(tid):
        for _ in range(per_thread):
            lock.acquire(tid)
            lock.release(tid)
        done[tid] = 1

    t0 = time.monotonic()
    spawn_team(ThreadTeamConfig(n_threads), body)
    assert time.monotonic() - t0 < 60.0
    assert all(done)
