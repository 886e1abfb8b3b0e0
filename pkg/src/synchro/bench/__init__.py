"""Benchmark and correctness harness; `synchro-bench` on the command line."""

from .config import (
    COUNTER_STRUCTURES,
    HASH_STRUCTURES,
    LOCK_STRUCTURES,
    QUEUE_STRUCTURES,
    STACK_STRUCTURES,
    STRUCTURE_NAMES,
    BenchConfig,
    UsageError,
    family_of,
    parse_cli,
)
from .report import BenchReport, CheckResult, emit_report, make_report, parse_report
from .runner import run_benchmark, run_stall_injection, yield_points_of
from .workloads import build_structure, workload_plan

__all__ = [
    "BenchConfig",
    "BenchReport",
    "CheckResult",
    "UsageError",
    "STRUCTURE_NAMES",
    "COUNTER_STRUCTURES",
    "QUEUE_STRUCTURES",
    "STACK_STRUCTURES",
    "LOCK_STRUCTURES",
    "HASH_STRUCTURES",
    "family_of",
    "parse_cli",
    "emit_report",
    "parse_report",
    "make_report",
    "run_benchmark",
    "run_stall_injection",
    "yield_points_of",
    "build_structure",
    "workload_plan",
]
