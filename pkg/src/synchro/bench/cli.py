"""Command line entry point.

Exit codes: 0 all checks passed (or none requested), 1 any failed
correctness check or failed run, 2 usage error.
"""

import sys

from .config import UsageError, parse_cli
from .report import emit_report
from .runner import run_benchmark


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_cli(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run_benchmark(config)
    except Exception as exc:
        # construction errors and unknown yield points land here
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(emit_report(report, config.out_format))
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
