"""Driving the benchmark harness, as a library and as a CLI.

The same runner backs both: `synchro-bench` (or `python -m
synchro.bench`) parses the documented flags, runs the workload for the
named structure, and emits a text or json-lines report with exit code
0 (all checks passed), 1 (a check failed), or 2 (usage error).
"""

import subprocess
import sys

from synchro.bench import BenchConfig, emit_report, parse_report, run_benchmark

print("== as a library ==")
cfg = BenchConfig(structure="sim-queue", n_threads=4, runs_per_thread=2000,
                  max_work=16, seed=42, mode="correctness")
report = run_benchmark(cfg)
print(emit_report(report, "text"))

print("\n== json-lines round-trips ==")
line = emit_report(report, "json-lines")
print(line[:100] + "...")
parsed = parse_report(line)
print("parse(emit(report)) preserves every field:",
      parsed.total_ops == report.total_ops
      and parsed.config == report.config)

print("\n== as a subprocess ==")
argv = [sys.executable, "-m", "synchro.bench",
        "--structure", "lf-stack", "--threads", "4", "--runs", "2000",
        "--max-work", "32", "--seed", "7", "--mode", "correctness",
        "--format", "json-lines"]
proc = subprocess.run(argv, capture_output=True, text=True)
print(" ".join(argv[2:]))
sub_report = parse_report(proc.stdout.strip())
print(f"exit code {proc.returncode}, "
      f"{sub_report.throughput_ops_per_sec:,.0f} ops/s, checks: "
      + ", ".join(f"{c.check}={'PASS' if c.passed else 'FAIL'}"
                  for c in sub_report.correctness))

print("\nbad usage exits 2:")
proc = subprocess.run([sys.executable, "-m", "synchro.bench",
                       "--structure", "lf-stack", "--threads", "0"],
                      capture_output=True, text=True)
print(f"  --threads 0 -> exit {proc.returncode}: {proc.stderr.strip()}")
