"""
Machine-readable reports.

Every command produces flat records with the top-level schema

    schema_version, command, inequality_id, inputs, lhs, rhs, residual,
    verdict, tolerance, hypothesis_flags, witness, timing_ms

written as JSON (floats in shortest round-trip form, so re-parsing gives the
same doubles) or as CSV with one row per record (floats with 17 significant
digits, nested fields JSON-encoded).
"""

import csv
import dataclasses
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from .convexity import ConvexityReport, Defect
from .errors import DomainError
from .inequalities import ResidualReport
from .interval import Interval
from .search import Certificate, SweepSummary

SCHEMA_VERSION = 1
FIELDS = (
    "schema_version",
    "command",
    "inequality_id",
    "inputs",
    "lhs",
    "rhs",
    "residual",
    "verdict",
    "tolerance",
    "hypothesis_flags",
    "witness",
    "timing_ms",
)

Record = Dict[str, Any]


def make_json_safe(obj):
    """
    Recursively converts dataclasses, enums, intervals and numpy values into
    plain JSON-serializable Python types.
    """
    if isinstance(obj, Interval):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: make_json_safe(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, tuple) and hasattr(obj, "_asdict"):
        return make_json_safe(obj._asdict())
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, (np.integer, np.floating)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)
    return obj


def make_record(command: str, inputs: Dict[str, Any], *, inequality_id: Optional[str] = None,
                lhs: Optional[float] = None, rhs: Optional[float] = None, residual: Optional[float] = None,
                verdict: Optional[str] = None, tolerance: Optional[float] = None,
                hypothesis_flags: Sequence[str] = (), witness: Optional[Dict[str, Any]] = None,
                timing_ms: float = 0.0) -> Record:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inequality_id": inequality_id,
        "inputs": make_json_safe(inputs),
        "lhs": lhs,
        "rhs": rhs,
        "residual": residual,
        "verdict": verdict,
        "tolerance": tolerance,
        "hypothesis_flags": list(hypothesis_flags),
        "witness": make_json_safe(witness),
        "timing_ms": timing_ms,
    }


def residual_record(command: str, report: ResidualReport, inputs: Dict[str, Any], timing_ms: float = 0.0) -> Record:
    return make_record(
        command,
        inputs,
        inequality_id=report.inequality_id,
        lhs=report.lhs,
        rhs=report.rhs,
        residual=report.residual,
        verdict=report.verdict.value,
        tolerance=report.tolerance,
        hypothesis_flags=report.hypothesis_flags,
        witness={"point": report.point, "details": report.details},
        timing_ms=timing_ms,
    )


def certificate_record(certificate: Certificate, inputs: Dict[str, Any], timing_ms: float = 0.0) -> Record:
    report = certificate.report
    return make_record(
        "search",
        inputs,
        inequality_id=certificate.inequality_id,
        lhs=certificate.lhs,
        rhs=certificate.rhs,
        residual=certificate.residual,
        verdict=certificate.status.value,
        tolerance=certificate.tolerance,
        hypothesis_flags=report.hypothesis_flags if report is not None else (),
        witness={
            "point": certificate.point,
            "scanned_minimum": certificate.scanned_minimum,
            "nodes_evaluated": certificate.nodes_evaluated,
            "nodes_skipped": certificate.nodes_skipped,
            "refinements": certificate.refinements,
        },
        timing_ms=timing_ms,
    )


def sweep_record(summary: SweepSummary, inputs: Dict[str, Any], timing_ms: float = 0.0) -> Record:
    worst = summary.worst
    return make_record(
        "sweep",
        inputs,
        inequality_id=summary.inequality_id,
        lhs=worst.lhs if worst else None,
        rhs=worst.rhs if worst else None,
        residual=summary.min_residual,
        verdict="holds" if summary.holds else "violated",
        tolerance=worst.tolerance if worst else None,
        hypothesis_flags=worst.hypothesis_flags if worst else (),
        witness={
            "point": worst.point if worst else None,
            "samples": summary.samples,
            "evaluated": summary.evaluated,
            "skipped": summary.skipped,
            "violations": summary.violations,
            "mean_residual": summary.mean_residual,
            "seed": summary.seed,
            "window": summary.window,
        },
        timing_ms=timing_ms,
    )


def convexity_record(report: ConvexityReport, inputs: Dict[str, Any], timing_ms: float = 0.0) -> Record:
    defect = report.convex_defect if report.verdict.value != "concave" else report.concave_defect
    return make_record(
        "classify",
        inputs,
        residual=defect.value,
        verdict=report.verdict.value,
        tolerance=defect.tolerance,
        witness={
            "affine": report.affine,
            "convex_defect": report.convex_defect,
            "concave_defect": report.concave_defect,
            "transform_verdict": report.transform_verdict,
            "interval": report.interval,
            "grid_n": report.grid_n,
        },
        timing_ms=timing_ms,
    )


def defect_record(defect: Defect, inputs: Dict[str, Any], label: str, timing_ms: float = 0.0) -> Record:
    return make_record(
        "classify",
        inputs,
        residual=defect.value,
        verdict=label if defect.holds else f"not {label}",
        tolerance=defect.tolerance,
        witness={"point": defect.witness, "grid_n": defect.grid_n},
        timing_ms=timing_ms,
    )


def _records(records: Union[Record, Iterable[Record]]) -> List[Record]:
    return [records] if isinstance(records, dict) else list(records)


def to_json(records: Union[Record, Iterable[Record]]) -> str:
    records = _records(records)
    payload = records[0] if len(records) == 1 else records
    return json.dumps(payload, indent=2)


def write_json(records: Union[Record, Iterable[Record]], path: Union[str, Path]) -> None:
    """Dumps one record as an object, several as a list."""
    with Path(path).open("w", encoding="utf-8") as f:
        f.write(to_json(records))
        f.write("\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g") if math.isfinite(value) else str(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


def to_csv(records: Union[Record, Iterable[Record]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FIELDS)
    for record in _records(records):
        writer.writerow([_cell(record.get(name)) for name in FIELDS])
    return buffer.getvalue()


def write_csv(records: Union[Record, Iterable[Record]], path: Union[str, Path]) -> None:
    """One row per record with the schema fields as columns."""
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        f.write(to_csv(records))


def write_report(records: Union[Record, Iterable[Record]], path: Union[str, Path], fmt: str) -> None:
    if fmt == "json":
        write_json(records, path)
    elif fmt == "csv":
        write_csv(records, path)
    else:
        raise DomainError(f"unknown report format {fmt!r}")
