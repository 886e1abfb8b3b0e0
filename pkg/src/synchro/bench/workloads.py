"""Per-family workloads and their built-in correctness checks.

Workload shapes (one "run" per loop iteration, local random work
between operations):

  counter  one ADD(1) per run; checks: exact total, returned pre-values
           form {0 .. T*runs-1}
  queue    enqueue + dequeue pair per run; checks: conservation,
           per-dequeuer per-producer FIFO, no duplicates
  stack    push + pop pair per run; checks: conservation, no duplicates
  lock     acquire / plain (non-atomic) increment / release per run;
           checks: exact counter, grant order == enqueue-ticket order
  hash     20/70/10 insert/search/delete mix over a 256-key space;
           checks: bucket residency, table-wide uniqueness, final
           content == per-bucket log replay

Workload op sequences are a deterministic function of (seed, thread
id): values carry (thread id << 48 | sequence) provenance tags and the
hash mix is drawn from a per-thread xorshift stream, so two runs with
the same config issue identical per-thread sequences regardless of
interleaving.

Pool-bounded kinds can report transient exhaustion when a tiny pool is
configured deliberately (the ABA stress); the paired workloads respond
by draining one element and retrying, which is the reuse pressure that
stress wants.
"""

from ..combining import (
    CCSynchObject,
    DSMSynchObject,
    HSynchObject,
    OyamaObject,
    PSimObject,
    SeqCounter,
)
from ..hashmap import HashKind, HashTable
from ..locks import ClhLock, McsLock
from ..queues import QueueKind, q_new
from ..runtime.pool import PoolEmptyError
from ..runtime.spin import yield_cpu
from ..runtime.work import WorkKnob, XorShift64, derive_seed, random_work
from ..signals import EMPTY
from ..stacks import StackKind, s_new
from .config import BenchConfig
from .report import CheckResult

HASH_KEY_SPACE = 256
# decouples the op-mix stream from the local-work stream
_OP_STREAM_SALT = 0xA5A5A5A5A5A5A5A5


def value_tag(thread_id: int, seq: int) -> int:
    return (thread_id << 48) | seq


class PlainCounter:
    """Deliberately non-atomic; only mutual exclusion makes it exact."""

    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def build_structure(config: BenchConfig):
    """Instantiate the structure (plus helpers) a config names."""
    name = config.structure
    t = config.n_threads
    cap = config.pool_capacity
    if cap is None:
        cap = 4 * t + 1024
    if config.family == "counter":
        if name == "cc-synch":
            return CCSynchObject(SeqCounter, t)
        if name == "dsm-synch":
            return DSMSynchObject(SeqCounter, t)
        if name == "h-synch":
            return HSynchObject(SeqCounter, t, config.group_size)
        if name == "psim":
            return PSimObject(SeqCounter, t)
        return OyamaObject(SeqCounter, t)
    if config.family == "queue":
        return q_new(QueueKind(name), t, config.group_size, cap)
    if config.family == "stack":
        return s_new(StackKind(name), t, config.group_size, cap)
    if config.family == "lock":
        instrument = config.mode != "throughput"
        cls = ClhLock if name == "clh-lock" else McsLock
        return cls(t, ticketing=instrument), PlainCounter()
    # hash
    return HashTable(HashKind(name), t, pool_capacity=cap,
                     record_ops=(config.mode == "correctness"))


def hash_plan(config: BenchConfig, thread_id: int):
    """Deterministic per-thread (op, key, value) sequence for hash runs."""
    rng = XorShift64(derive_seed(config.seed ^ _OP_STREAM_SALT, thread_id))
    plan = []
    for seq in range(config.runs_per_thread):
        r = rng.next_below(10)
        key = rng.next_below(HASH_KEY_SPACE)
        if r < 2:
            plan.append(("insert", key, value_tag(thread_id, seq)))
        elif r < 9:
            plan.append(("search", key, 0))
        else:
            plan.append(("delete", key, 0))
    return plan


def workload_plan(config: BenchConfig, thread_id: int):
    """The per-thread op sequence a config generates (determinism hook)."""
    if config.family == "hash":
        return hash_plan(config, thread_id)
    if config.family in ("queue", "stack"):
        return [value_tag(thread_id, seq) for seq in range(config.runs_per_thread)]
    return [1] * config.runs_per_thread  # counters and locks: uniform ops


# ---------------------------------------------------------------- counter

def run_counter(obj, config: BenchConfig, knob: WorkKnob, thread_id: int, collect):
    runs = config.runs_per_thread
    apply_ = obj.apply
    add = SeqCounter.OP_ADD
    rets = [] if collect is not None else None
    for _ in range(runs):
        rv = apply_(add, 1, thread_id)
        if rets is not None:
            rets.append(rv)
        if knob.max_work:
            random_work(knob, thread_id)
    if collect is not None:
        collect[thread_id] = rets
    return runs


def check_counter(obj, config: BenchConfig, collect) -> list:
    expected = config.n_threads * config.runs_per_thread
    final = obj.apply(0, 0, 0)
    checks = [CheckResult("counter_total", final == expected,
                          f"final counter {final}, expected {expected}")]
    rets = sorted(v for per in collect for v in per)
    ok = rets == list(range(expected))
    checks.append(CheckResult(
        "counter_returns", ok,
        "pre-values form {0..N-1}" if ok else "duplicate or missing pre-values"))
    return checks


# ------------------------------------------------------------ queue/stack

def _paired_put(put, drain_one, value, thread_id):
    while True:
        try:
            put(value, thread_id)
            return
        except PoolEmptyError:
            # tiny pools: recycle one element, then retry the insert
            drain_one(thread_id)


def run_queue(q, config: BenchConfig, knob: WorkKnob, thread_id: int, collect):
    runs = config.runs_per_thread
    taken = [] if collect is not None else None

    def drain_one(tid):
        v = q.dequeue(tid)
        if v is EMPTY:
            yield_cpu()
        elif taken is not None:
            taken.append(v)

    for seq in range(runs):
        _paired_put(q.enqueue, drain_one, value_tag(thread_id, seq), thread_id)
        if knob.max_work:
            random_work(knob, thread_id)
        v = q.dequeue(thread_id)
        if v is not EMPTY and taken is not None:
            taken.append(v)
        if knob.max_work:
            random_work(knob, thread_id)
    if collect is not None:
        collect[thread_id] = taken
    return 2 * runs


def run_stack(s, config: BenchConfig, knob: WorkKnob, thread_id: int, collect):
    runs = config.runs_per_thread
    taken = [] if collect is not None else None

    def drain_one(tid):
        v = s.pop(tid)
        if v is EMPTY:
            yield_cpu()
        elif taken is not None:
            taken.append(v)

    for seq in range(runs):
        _paired_put(s.push, drain_one, value_tag(thread_id, seq), thread_id)
        if knob.max_work:
            random_work(knob, thread_id)
        v = s.pop(thread_id)
        if v is not EMPTY and taken is not None:
            taken.append(v)
        if knob.max_work:
            random_work(knob, thread_id)
    if collect is not None:
        collect[thread_id] = taken
    return 2 * runs


def _drain_all(pop_one, thread_id=0):
    out = []
    while True:
        v = pop_one(thread_id)
        if v is EMPTY:
            return out
        out.append(v)


def check_pool_structure(impl, config: BenchConfig, collect, fifo: bool) -> list:
    t, runs = config.n_threads, config.runs_per_thread
    residue = _drain_all(impl.dequeue if fifo else impl.pop)
    taken = [v for per in collect for v in per]
    produced = sorted(value_tag(tid, s) for tid in range(t) for s in range(runs))
    consumed = sorted(taken + residue)
    checks = [CheckResult(
        "conservation", consumed == produced,
        f"{len(taken)} dequeued + {len(residue)} drained vs {len(produced)} enqueued")]
    dup = len(consumed) != len(set(consumed))
    checks.append(CheckResult("no_duplicates", not dup,
                              "duplicate values seen" if dup else "all values distinct"))
    if fifo:
        ok = True
        for per in collect:
            last = {}
            for v in per:
                p, seq = v >> 48, v & (1 << 48) - 1
                if last.get(p, -1) >= seq:
                    ok = False
                last[p] = seq
        checks.append(CheckResult(
            "per_producer_fifo", ok,
            "per-dequeuer per-producer sequence numbers increase" if ok
            else "inversion in a producer's sequence"))
    return checks


# ------------------------------------------------------------------ lock

def run_lock(pair, config: BenchConfig, knob: WorkKnob, thread_id: int, collect):
    lock, counter = pair
    runs = config.runs_per_thread
    grants = [] if collect is not None else None
    for _ in range(runs):
        ticket = lock.acquire(thread_id)
        n = counter.n
        counter.n = n + 1
        if grants is not None:
            grants.append((ticket, n + 1))  # n+1 is this grant's order stamp
        lock.release(thread_id)
        if knob.max_work:
            random_work(knob, thread_id)
    if collect is not None:
        collect[thread_id] = grants
    return runs


def check_lock(pair, config: BenchConfig, collect) -> list:
    lock, counter = pair
    expected = config.n_threads * config.runs_per_thread
    checks = [CheckResult(
        "lock_mutual_exclusion", counter.n == expected,
        f"plain counter {counter.n}, expected {expected}")]
    pairs = sorted((g for per in collect for g in per), key=lambda p: p[1])
    inversions = sum(1 for a, b in zip(pairs, pairs[1:]) if a[0] > b[0])
    checks.append(CheckResult(
        "lock_fifo", inversions == 0,
        f"{inversions} grant-order inversions over {len(pairs)} acquisitions"))
    return checks


# ------------------------------------------------------------------ hash

def run_hash(table, config: BenchConfig, knob: WorkKnob, thread_id: int, collect):
    plan = hash_plan(config, thread_id)
    for op, key, value in plan:
        if op == "insert":
            try:
                table.insert(key, value, thread_id)
            except PoolEmptyError:
                pass  # counted as a served (rejected) op
        elif op == "search":
            table.search(key, thread_id)
        else:
            table.delete(key, thread_id)
        if knob.max_work:
            random_work(knob, thread_id)
    if collect is not None:
        collect[thread_id] = len(plan)
    return len(plan)


def _replay_bucket_log(log):
    content = {}
    for entry in log:
        op, key = entry[0], entry[1]
        if op == 1:  # insert
            content[key] = entry[2]
        elif op == 2 and entry[2]:  # delete that removed
            content.pop(key, None)
    return content


def check_hash(table, config: BenchConfig, collect) -> list:
    items = table.items()
    mask = table.n_buckets - 1
    from ..hashmap import mix64

    residency = all(b == (mix64(k) & mask) for b, k, _ in items)
    keys = [k for _, k, _ in items]
    unique = len(keys) == len(set(keys))
    checks = [
        CheckResult("hash_bucket_residency", residency,
                    f"{len(items)} entries scanned"),
        CheckResult("hash_uniqueness", unique,
                    "no key appears twice" if unique else "duplicate key found"),
    ]
    if table.oplogs is not None:
        replayed = {}
        for log in table.oplogs:
            replayed.update(_replay_bucket_log(log))
        actual = {k: v for _, k, v in items}
        checks.append(CheckResult(
            "hash_log_replay", replayed == actual,
            f"{len(actual)} final entries match per-bucket serialization logs"
            if replayed == actual else "final content diverges from bucket logs"))
    return checks


FAMILY_RUNNERS = {
    "counter": run_counter,
    "queue": run_queue,
    "stack": run_stack,
    "lock": run_lock,
    "hash": run_hash,
}


def family_checks(impl, config: BenchConfig, collect) -> list:
    fam = config.family
    if fam == "counter":
        return check_counter(impl, config, collect)
    if fam == "queue":
        return check_pool_structure(impl, config, collect, fifo=True)
    if fam == "stack":
        return check_pool_structure(impl, config, collect, fifo=False)
    if fam == "lock":
        return check_lock(impl, config, collect)
    return check_hash(impl, config, collect)
