"""Thread teams: spawn N workers with optional CPU pinning.

Pinning uses per-thread sched_setaffinity where the platform provides
it and is silently skipped otherwise.  The SYNCHRO_PIN environment
variable (none|compact|scatter) overrides the configured policy.
"""

import os
import threading
from dataclasses import dataclass

PIN_POLICIES = ("none", "compact", "scatter")
DEFAULT_HARD_CAP = 512

PIN_ENV_VAR = "SYNCHRO_PIN"


class TeamError(Exception):
    """Thread creation or body failure, naming the failing thread."""


@dataclass
class ThreadTeamConfig:
    n_threads: int
    pin_policy: str = "none"
    group_size: int | None = None  # None: one group spanning the team
    hard_cap: int = DEFAULT_HARD_CAP

    def __post_init__(self):
        if self.n_threads < 1 or self.n_threads > self.hard_cap:
            raise ValueError(
                f"n_threads must be in [1, {self.hard_cap}], got {self.n_threads}"
            )
        if self.pin_policy not in PIN_POLICIES:
            raise ValueError(f"pin_policy must be one of {PIN_POLICIES}")
        if self.group_size is None:
            self.group_size = self.n_threads
        if self.group_size < 1:
            raise ValueError("group_size must be positive")

    def group_of(self, thread_id: int) -> int:
        return thread_id // self.group_size


def effective_pin_policy(config: ThreadTeamConfig) -> str:
    env = os.environ.get(PIN_ENV_VAR)
    if env is not None:
        if env not in PIN_POLICIES:
            raise ValueError(f"{PIN_ENV_VAR} must be one of {PIN_POLICIES}, got {env!r}")
        return env
    return config.pin_policy


def _pin_target(policy: str, tid: int, config: ThreadTeamConfig, cpus: list[int]) -> int | None:
    if policy == "compact":
        # fill logical CPUs in thread-id order
        return cpus[tid % len(cpus)]
    if policy == "scatter":
        # round-robin consecutive ids across groups of group_size
        n_groups = (config.n_threads + config.group_size - 1) // config.group_size
        group = tid % n_groups
        slot = (tid // n_groups) % config.group_size
        return cpus[(group * config.group_size + slot) % len(cpus)]
    return None


def _pin_self(cpu: int) -> None:
    try:
        os.sched_setaffinity(0, {cpu})
    except (AttributeError, OSError):
        pass  # platform without per-thread affinity: pinning is best-effort


def spawn_team(config: ThreadTeamConfig, body) -> list:
    """Run body(thread_id) on n_threads threads; return results by id.

    Joins every thread before returning.  An exception in any body is
    re-raised as TeamError naming the thread, after the rest have been
    joined.
    """
    policy = effective_pin_policy(config)
    try:
        cpus = sorted(os.sched_getaffinity(0))
    except (AttributeError, OSError):
        cpus = []

    n = config.n_threads
    results = [None] * n
    failures: list[tuple[int, BaseException]] = []

    def runner(tid: int):
        if policy != "none" and cpus:
            target = _pin_target(policy, tid, config, cpus)
            if target is not None:
                _pin_self(target)
        try:
            results[tid] = body(tid)
        except BaseException as exc:  # propagated after the join below
            failures.append((tid, exc))

    threads = []
    for tid in range(n):
        t = threading.Thread(target=runner, args=(tid,), name=f"team-{tid}")
        try:
            t.start()
        except BaseException as exc:
            for started in threads:
                started.join()
            raise TeamError(f"failed to start thread {tid}") from exc
        threads.append(t)
    for t in threads:
        t.join()

    if failures:
        failures.sort(key=lambda f: f[0])
        tid, exc = failures[0]
        raise TeamError(f"thread {tid} failed: {exc!r}") from exc
    return results
