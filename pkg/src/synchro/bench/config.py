"""Benchmark configuration and CLI parsing.

Flag set (see README for defaults):

  --structure <name>   one of STRUCTURE_NAMES (required)
  --threads <n>        team size
  --runs <n>           operations (or operation pairs) per thread
  --max-work <n>       contention knob: bound on random local work
  --seed <n>           64-bit workload seed
  --pin <none|compact|scatter>
  --group-size <n>     threads per simulated NUMA group (H-Synch kinds)
  --pool-capacity <n>  node pool size for pooled structures
  --mode <throughput|correctness|stall-injection>
  --victim <tid>       stall-injection: thread to halt
  --yield-point <name> stall-injection: named instrumentation point
  --format <text|json-lines>

Errors raise UsageError naming the offending flag; the CLI maps them to
exit code 2.
"""

import argparse
from dataclasses import dataclass

from ..runtime.atomic import MASK64
from ..runtime.team import PIN_POLICIES

COUNTER_STRUCTURES = ("cc-synch", "dsm-synch", "h-synch", "psim", "oyama")
QUEUE_STRUCTURES = ("cc-queue", "dsm-queue", "h-queue", "sim-queue",
                    "clh-queue", "ms-queue")
STACK_STRUCTURES = ("cc-stack", "dsm-stack", "h-stack", "sim-stack",
                    "clh-stack", "lf-stack")
LOCK_STRUCTURES = ("clh-lock", "mcs-lock")
HASH_STRUCTURES = ("clh-hash", "dsm-hash")

STRUCTURE_NAMES = (COUNTER_STRUCTURES + QUEUE_STRUCTURES + STACK_STRUCTURES
                   + LOCK_STRUCTURES + HASH_STRUCTURES)

MODES = ("throughput", "correctness", "stall_injection")
FORMATS = ("text", "json-lines")

MAX_TOTAL_OPS = 1 << 40

DEFAULT_WATCHDOG_S = 120.0


class UsageError(Exception):
    """Bad command line: unknown flag, bad value, missing --structure."""


def family_of(structure: str) -> str:
    if structure in COUNTER_STRUCTURES:
        return "counter"
    if structure in QUEUE_STRUCTURES:
        return "queue"
    if structure in STACK_STRUCTURES:
        return "stack"
    if structure in LOCK_STRUCTURES:
        return "lock"
    if structure in HASH_STRUCTURES:
        return "hash"
    raise UsageError(f"--structure: unknown structure {structure!r}")


@dataclass
class BenchConfig:
    structure: str
    n_threads: int = 4
    runs_per_thread: int = 1000
    max_work: int = 0
    seed: int = 1
    pin_policy: str = "none"
    group_size: int | None = None
    pool_capacity: int | None = None
    mode: str = "throughput"
    victim: int = 0
    yield_point: str | None = None
    out_format: str = "text"
    # not CLI-settable: hang conversion budget for the runner
    watchdog_s: float = DEFAULT_WATCHDOG_S

    def __post_init__(self):
        if self.structure not in STRUCTURE_NAMES:
            raise UsageError(f"--structure: unknown structure {self.structure!r}")
        if self.n_threads < 1 or self.n_threads > 512:
            raise UsageError(f"--threads: must be in [1, 512], got {self.n_threads}")
        if self.runs_per_thread < 1:
            raise UsageError(f"--runs: must be positive, got {self.runs_per_thread}")
        if self.n_threads * self.runs_per_thread > MAX_TOTAL_OPS:
            raise UsageError("--runs: threads * runs exceeds 2**40")
        if self.max_work < 0:
            raise UsageError(f"--max-work: must be non-negative, got {self.max_work}")
        if not 0 <= self.seed <= MASK64:
            raise UsageError("--seed: must fit in 64 bits")
        if self.pin_policy not in PIN_POLICIES:
            raise UsageError(f"--pin: must be one of {PIN_POLICIES}")
        if self.group_size is not None and self.group_size < 1:
            raise UsageError("--group-size: must be positive")
        if self.pool_capacity is not None and self.pool_capacity < 1:
            raise UsageError("--pool-capacity: must be positive")
        if self.mode not in MODES:
            raise UsageError(f"--mode: must be one of {MODES}")
        if not 0 <= self.victim < self.n_threads:
            raise UsageError(f"--victim: must be in [0, {self.n_threads})")
        if self.out_format not in FORMATS:
            raise UsageError(f"--format: must be one of {FORMATS}")
        if self.mode == "stall_injection" and self.yield_point is None:
            raise UsageError("--yield-point: required when --mode stall-injection")

    @property
    def family(self) -> str:
        return family_of(self.structure)

    def echo(self) -> dict:
        return {
            "structure": self.structure,
            "threads": self.n_threads,
            "runs": self.runs_per_thread,
            "max_work": self.max_work,
            "seed": self.seed,
            "pin": self.pin_policy,
            "group_size": self.group_size,
            "pool_capacity": self.pool_capacity,
            "mode": self.mode,
            "victim": self.victim,
            "yield_point": self.yield_point,
            "format": self.out_format,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="synchro-bench", add_help=True,
                description="Benchmark and correctness harness for the "
                            "synchro concurrent data structures.")
    p.add_argument("--structure", choices=STRUCTURE_NAMES, metavar="<name>",
                   help="structure to exercise: " + ", ".join(STRUCTURE_NAMES))
    p.add_argument("--threads", type=int, default=4, metavar="<n>")
    p.add_argument("--runs", type=int, default=1000, metavar="<n>")
    p.add_argument("--max-work", type=int, default=0, metavar="<n>")
    p.add_argument("--seed", type=int, default=1, metavar="<n>")
    p.add_argument("--pin", choices=PIN_POLICIES, default="none")
    p.add_argument("--group-size", type=int, default=None, metavar="<n>")
    p.add_argument("--pool-capacity", type=int, default=None, metavar="<n>")
    p.add_argument("--mode", choices=("throughput", "correctness", "stall-injection"),
                   default="throughput")
    p.add_argument("--victim", type=int, default=0, metavar="<tid>")
    p.add_argument("--yield-point", default=None, metavar="<name>")
    p.add_argument("--format", choices=FORMATS, default="text", dest="out_format")
    return p


def parse_cli(argv: list) -> BenchConfig:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError:
        raise
    if ns.structure is None:
        raise UsageError("--structure is required")
    return BenchConfig(
        structure=ns.structure,
        n_threads=ns.threads,
        runs_per_thread=ns.runs,
        max_work=ns.max_work,
        seed=ns.seed,
        pin_policy=ns.pin,
        group_size=ns.group_size,
        pool_capacity=ns.pool_capacity,
        mode=ns.mode.replace("-", "_"),
        victim=ns.victim,
        yield_point=ns.yield_point,
        out_format=ns.out_format,
    )
