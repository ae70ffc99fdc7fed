"""Python interface to the stream workload benchmark harness."""

try:
    from fastbench._core import (  # type: ignore[attr-defined]
        ParseError,
        ValidationError,
        builtin_workloads,
        generate_trace,
        plan,
        run,
        verify_report,
        workload_info,
    )
except ImportError:  # in-tree build: the extension sits next to us on sys.path
    from _core import (  # type: ignore[no-redef]
        ParseError,
        ValidationError,
        builtin_workloads,
        generate_trace,
        plan,
        run,
        verify_report,
        workload_info,
    )

__all__ = [
    "ParseError",
    "ValidationError",
    "builtin_workloads",
    "generate_trace",
    "plan",
    "run",
    "verify_report",
    "workload_info",
]
