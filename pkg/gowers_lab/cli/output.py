"""
Report emission (JSON lines, CSV, pretty) and golden-file comparison.
"""
import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

from gowers_lab import __version__
from gowers_lab.logger import logger

GOLDEN_TOLERANCE = 1e-9


def with_provenance(record: Dict[str, Any], echo: Dict[str, Any]) -> Dict[str, Any]:
    return {**record, "config": echo, "version": __version__}


def render(records: List[Dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if fmt == "csv":
        fields: List[str] = []
        for record in records:
            fields.extend(k for k in record if k not in fields and k != "config")
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in record.items()})
        return buffer.getvalue()
    lines = []
    for record in records:
        for key, value in record.items():
            if key in ("config", "version"):
                continue
            lines.append(f"{key:>24}: {value}")
        lines.append("")
    return "\n".join(lines)


def write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {output}")
    else:
        print(text, end="")


def _close(expected: Any, actual: Any) -> bool:
    if isinstance(expected, bool) or isinstance(actual, bool):
        return expected == actual
    if isinstance(expected, (int, float)) and isinstance(actual, (int, float)):
        return math.isclose(expected, actual, rel_tol=0.0, abs_tol=GOLDEN_TOLERANCE)
    if isinstance(expected, list) and isinstance(actual, list):
        return len(expected) == len(actual) and all(_close(e, a) for e, a in zip(expected, actual))
    if isinstance(expected, dict) and isinstance(actual, dict):
        return expected.keys() == actual.keys() and all(_close(expected[k], actual[k]) for k in expected)
    return expected == actual


def golden_check(records: List[Dict[str, Any]], path: str) -> bool:
    """Record the reports on first use; afterwards compare within GOLDEN_TOLERANCE"""
    golden = Path(path)
    if not golden.exists():
        golden.write_text(json.dumps(records, sort_keys=True, indent=2), encoding="utf-8")
        logger.info(f"Golden file recorded at {path}")
        return True
    expected = json.loads(golden.read_text(encoding="utf-8"))
    if _close(expected, json.loads(json.dumps(records))):
        return True
    logger.error(f"Output differs from golden file {path}")
    return False
