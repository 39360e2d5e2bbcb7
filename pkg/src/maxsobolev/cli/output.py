"""Writers of the report files of a scenario run."""
from __future__ import annotations

import csv
import json
import logging
from typing import TYPE_CHECKING

from maxsobolev.core.reports import to_jsonable

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence
    from pathlib import Path

    from maxsobolev.core.reports import ScenarioOutcome

__all__ = ["dumps", "write_csv", "write_outcome"]

_logger = logging.getLogger(__name__)


def dumps(data: object) -> str:
    """Deterministic JSON text with sorted keys."""
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV table with a header row."""
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(to_jsonable(list(rows)))


def write_outcome(outcome: ScenarioOutcome, output_dir: Path,
                  scenario: str) -> list[Path]:
    """Write ``report.json``, ``summary.csv`` and the scenario's tables.

    Returns
    -------
    list[Path]
        The written files.
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    report: Mapping[str, object] = {**outcome.report, "scenario": scenario,
                                    "passed": outcome.passed}
    written = [output_dir / "report.json"]
    written[0].write_text(dumps(report), encoding="utf-8")
    written.append(output_dir / "summary.csv")
    write_csv(written[-1], ("check", "passed", "ratio"), outcome.checks)
    for name, (header, rows) in sorted(outcome.tables.items()):
        written.append(output_dir / name)
        write_csv(written[-1], header, rows)
    for path in written:
        _logger.info("Wrote %s.", path)
    return written
