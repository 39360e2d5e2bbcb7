"""Pytest configuration for benchmarks with speedup display."""

from __future__ import annotations

import json
from pathlib import Path

# Allowed relative drop of the speedup of the prefix-sum path against the baseline.
SPEEDUP_TOLERANCE = 0.5


def pytest_terminal_summary(terminalreporter):
    """Add grid size and speedup summary after benchmark results."""
    if not hasattr(terminalreporter.config, "_benchmarksession"):
        return

    bench_session = terminalreporter.config._benchmarksession
    if not bench_session.benchmarks:
        return

    terminalreporter.write_line("")
    terminalreporter.write_line("Maximal operator paths:", bold=True, yellow=True)
    terminalreporter.write_line("-" * 80, yellow=True)

    groups = {}
    for bench in bench_session.benchmarks:
        if not bench or not hasattr(bench, "extra_info"):
            continue
        groups.setdefault(bench.group or "default", []).append(bench)

    for group_name, benchmarks in groups.items():
        if len(groups) > 1:
            terminalreporter.write_line(f"\n{group_name}:", bold=True)

        terminalreporter.write_line(
            f"{'Name':<46} {'#Cells':>10} {'#Radii':>8} {'Speedup':>12}"
        )
        terminalreporter.write_line("-" * 80)

        for bench in benchmarks:
            cells = bench.extra_info.get("cells", "N/A")
            radii = bench.extra_info.get("radii", "N/A")
            speedup = bench.extra_info.get("speedup")
            speedup = "N/A" if speedup is None else f"{speedup:.2f}x"
            name = bench.name[:43] + "..." if len(bench.name) > 46 else bench.name
            terminalreporter.write_line(
                f"{name:<46} {cells:>10} {radii:>8} {speedup:>12}"
            )

    terminalreporter.write_line("")

    _check_regression(terminalreporter, bench_session)


def _check_regression(terminalreporter, bench_session):
    """Check for speedup regressions against a stored baseline."""
    baseline_file = Path(".benchmarks/baseline.json")
    if not baseline_file.exists():
        return

    with baseline_file.open() as f:
        baseline_data = json.load(f)

    regressions = []
    for bench in bench_session.benchmarks:
        if not bench or not hasattr(bench, "extra_info"):
            continue

        current = bench.extra_info.get("speedup")
        baseline = baseline_data.get(bench.fullname, {}).get("speedup")
        if current is None or baseline is None:
            continue

        if current < baseline * (1 - SPEEDUP_TOLERANCE):
            regressions.append((bench.name, baseline, current))

    if regressions:
        terminalreporter.write_line("")
        terminalreporter.write_line(
            "Speedup Regression Detected:", bold=True, red=True
        )
        terminalreporter.write_line("-" * 80, yellow=True)
        for name, baseline, current in regressions:
            terminalreporter.write_line(
                f"  {name}: {baseline:.2f}x -> {current:.2f}x", red=True
            )
        terminalreporter.write_line("")
        raise AssertionError(
            "Benchmark regression: the prefix-sum path lost its speedup. "
            "See details above."
        )
