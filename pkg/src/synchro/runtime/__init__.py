"""Runtime primitives: atomic words, barriers, thread teams, timing,
seeded local work, node pools, backoff, and instrumentation hooks.

Everything above this layer (combining objects, queues, stacks, locks,
hash tables, the benchmark harness) is built from these pieces only.
"""

from .atomic import AtomicWord, MASK64
from .barrier import Barrier, barrier_wait
from .pool import (
    INDEX_MASK,
    NULL_INDEX,
    Node,
    NodePool,
    PoolEmptyError,
    is_null,
    null_ref,
    pack,
    pool_alloc,
    pool_free,
    ref_index,
    ref_tag,
)
from .spin import Backoff, yield_cpu
from .team import (
    PIN_ENV_VAR,
    PIN_POLICIES,
    TeamError,
    ThreadTeamConfig,
    effective_pin_policy,
    spawn_team,
)
from .timing import now
from .work import (
    MAX_TEAM_THREADS,
    THREAD_SEED_MULT,
    WorkKnob,
    XorShift64,
    derive_seed,
    random_work,
)

__all__ = [
    "AtomicWord",
    "MASK64",
    "Barrier",
    "barrier_wait",
    "Node",
    "NodePool",
    "PoolEmptyError",
    "INDEX_MASK",
    "NULL_INDEX",
    "pack",
    "ref_index",
    "ref_tag",
    "is_null",
    "null_ref",
    "pool_alloc",
    "pool_free",
    "Backoff",
    "yield_cpu",
    "ThreadTeamConfig",
    "TeamError",
    "spawn_team",
    "effective_pin_policy",
    "PIN_ENV_VAR",
    "PIN_POLICIES",
    "now",
    "WorkKnob",
    "XorShift64",
    "random_work",
    "derive_seed",
    "THREAD_SEED_MULT",
    "MAX_TEAM_THREADS",
]
