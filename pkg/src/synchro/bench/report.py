"""Benchmark reports: structured results plus text / json-lines emitters.

json-lines is one object per line with the exact BenchReport field
names in lower_snake_case; `parse_report` inverts `emit_report` for
that format.
"""

import json
from dataclasses import dataclass


@dataclass
class CheckResult:
    check: str
    passed: bool
    detail: str = ""


@dataclass
class BenchReport:
    config: dict
    wall_time_ns: int
    total_ops: int
    throughput_ops_per_sec: float
    mean_op_latency_ns: float
    correctness: list
    seed: int

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.correctness)


def make_report(config_echo: dict, wall_time_ns: int, total_ops: int,
                n_threads: int, checks: list, seed: int) -> BenchReport:
    secs = wall_time_ns / 1e9 if wall_time_ns > 0 else 0.0
    throughput = total_ops / secs if secs > 0 else 0.0
    # thread-time per completed operation
    latency = (wall_time_ns * n_threads / total_ops) if total_ops else 0.0
    return BenchReport(
        config=config_echo,
        wall_time_ns=wall_time_ns,
        total_ops=total_ops,
        throughput_ops_per_sec=throughput,
        mean_op_latency_ns=latency,
        correctness=checks,
        seed=seed,
    )


def emit_report(report: BenchReport, format: str = "text") -> str:
    if format == "json-lines":
        obj = {
            "config": report.config,
            "wall_time_ns": report.wall_time_ns,
            "total_ops": report.total_ops,
            "throughput_ops_per_sec": report.throughput_ops_per_sec,
            "mean_op_latency_ns": report.mean_op_latency_ns,
            "correctness": [
                {"check": c.check, "passed": c.passed, "detail": c.detail}
                for c in report.correctness
            ],
            "seed": report.seed,
        }
        return json.dumps(obj, separators=(",", ":"))
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = [f"structure: {report.config.get('structure')}"]
    for k, v in report.config.items():
        if k != "structure":
            lines.append(f"  {k}: {v}")
    lines.append(f"wall_time_ns: {report.wall_time_ns}")
    lines.append(f"total_ops: {report.total_ops}")
    lines.append(f"throughput_ops_per_sec: {report.throughput_ops_per_sec:.1f}")
    lines.append(f"mean_op_latency_ns: {report.mean_op_latency_ns:.1f}")
    lines.append(f"seed: {report.seed}")
    if report.correctness:
        lines.append("correctness:")
        for c in report.correctness:
            verdict = "PASS" if c.passed else "FAIL"
            suffix = f" ({c.detail})" if c.detail else ""
            lines.append(f"  {c.check}: {verdict}{suffix}")
    return "\n".join(lines)


def parse_report(line: str) -> BenchReport:
    """Inverse of emit_report(..., 'json-lines')."""
    obj = json.loads(line)
    return BenchReport(
        config=obj["config"],
        wall_time_ns=obj["wall_time_ns"],
        total_ops=obj["total_ops"],
        throughput_ops_per_sec=obj["throughput_ops_per_sec"],
        mean_op_latency_ns=obj["mean_op_latency_ns"],
        correctness=[
            CheckResult(c["check"], c["passed"], c["detail"])
            for c in obj["correctness"]
        ],
        seed=obj["seed"],
    )
