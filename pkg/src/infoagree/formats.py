"""Matrix file formats and machine-readable reports.

Input orientation is fixed: row index = rater Y's class, column index =
rater X's class. The agreement value itself is transpose-symmetric, so a
flipped reading would be invisible in the value; the m (non-null rows) and
l (non-null columns) fields in reports exist partly to keep orientation
auditable.

Report floats are serialized with 17 significant digits, which round-trips
doubles exactly and keeps report bytes stable across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from infoagree.errors import InternalInvariantError, ParseError
from infoagree.matrix import AgreementMatrix
from infoagree.measure import IaResult
from infoagree.oracle import ConvergenceConfig, ConvergenceReport, EpsilonEvaluation

CSV_FORMAT = "csv"
JSON_FORMAT = "json"


@dataclass(frozen=True)
class MatrixDocument:
    """A parsed matrix plus where it came from and optional class labels."""

    source_path: str
    format: str
    labels: tuple[str, ...] | None
    matrix: AgreementMatrix


def parse_csv(text: str, source_path: str = "<string>") -> MatrixDocument:
    """Parse comma-separated nonnegative integer rows.

    An optional first row of class labels is detected by containing any
    field that does not parse as an integer. Decimal point "." and
    separator "," are fixed; no locale handling.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty CSV input")
    rows = [[field.strip() for field in line.split(",")] for line in lines]

    labels: tuple[str, ...] | None = None
    data_rows = rows
    first_data_line = 1
    if any(not _is_integer_field(f) for f in rows[0]):
        labels = tuple(rows[0])
        data_rows = rows[1:]
        first_data_line = 2
    if not data_rows:
        raise ParseError("no matrix rows after the label row")

    width = len(data_rows[0])
    cells: list[list[int]] = []
    for i, row in enumerate(data_rows):
        line_no = first_data_line + i
        if len(row) != width:
            raise ParseError(
                f"expected {width} fields, found {len(row)}", row=line_no
            )
        parsed_row = []
        for j, field in enumerate(row):
            if not _is_integer_field(field):
                raise ParseError(
                    f"not an integer: {field!r}", row=line_no, col=j + 1
                )
            parsed_row.append(int(field))
        cells.append(parsed_row)

    return MatrixDocument(
        source_path=source_path,
        format=CSV_FORMAT,
        labels=labels,
        matrix=AgreementMatrix(cells),
    )


def parse_json(text: str, source_path: str = "<string>") -> MatrixDocument:
    """Parse {"labels": [...]?, "matrix": [[...], ...]}.

    Cells must be JSON integers; labels, when present, must be strings and
    match the matrix dimension.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    if "matrix" not in obj:
        raise ParseError('missing required "matrix" key')
    rows = obj["matrix"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError('"matrix" must be an array of arrays')
    if not rows:
        raise ParseError('"matrix" is empty')
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"expected {width} values, found {len(row)}", row=i + 1)
        for j, cell in enumerate(row):
            if isinstance(cell, bool) or not isinstance(cell, int):
                raise ParseError(
                    f"cell is not an integer: {cell!r}", row=i + 1, col=j + 1
                )

    labels: tuple[str, ...] | None = None
    if obj.get("labels") is not None:
        raw = obj["labels"]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            raise ParseError('"labels" must be an array of strings')
        if len(raw) != len(rows):
            raise ParseError(
                f'{len(raw)} labels for a {len(rows)}-row matrix'
            )
        labels = tuple(raw)

    return MatrixDocument(
        source_path=source_path,
        format=JSON_FORMAT,
        labels=labels,
        matrix=AgreementMatrix(rows),
    )


def load_document(path: str, format: str | None = None) -> MatrixDocument:
    """Read a matrix file, picking the parser by --format or file extension."""
    if format is None:
        lower = path.lower()
        if lower.endswith(".csv"):
            format = CSV_FORMAT
        elif lower.endswith(".json"):
            format = JSON_FORMAT
        else:
            raise ParseError(
                f"cannot infer format of {path!r}; pass --format csv|json"
            )
    if format not in (CSV_FORMAT, JSON_FORMAT):
        raise ParseError(f"unknown format {format!r}")
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if format == CSV_FORMAT:
        return parse_csv(text, source_path=path)
    return parse_json(text, source_path=path)


def document_to_json(doc: MatrixDocument) -> str:
    """Serialize a document back to the JSON input format (round-trip safe)."""
    payload: dict[str, Any] = {}
    if doc.labels is not None:
        payload["labels"] = list(doc.labels)
    payload["matrix"] = doc.matrix.counts.tolist()
    return dump_json(payload)


def _is_integer_field(field: str) -> bool:
    try:
        int(field)
    except ValueError:
        return False
    return True


# --- reports ----------------------------------------------------------------


def build_report(
    doc: MatrixDocument,
    result: IaResult,
    version: str,
    sweep_result: Sequence[EpsilonEvaluation] | None = None,
    convergence: ConvergenceReport | None = None,
    convergence_config: ConvergenceConfig | None = None,
) -> dict[str, Any]:
    """Assemble the report emitted by the CLI.

    The input descriptor deliberately omits the source format so that CSV
    and JSON encodings of the same matrix yield identical reports up to
    source_path.
    """
    report: dict[str, Any] = {
        "input": {
            "path": doc.source_path,
            "n": doc.matrix.n,
            "labels": list(doc.labels) if doc.labels is not None else None,
        },
        "ia": {
            "value": result.value,
            "case": result.case.value,
            "n": result.n,
            "m": result.m,
            "l": result.l,
            "h_x": result.h_x,
            "h_y": result.h_y,
            "h_xy": result.h_xy,
        },
    }
    if sweep_result is not None:
        rows = []
        for i, ev in enumerate(sweep_result):
            row = {"epsilon": ev.epsilon, "ia_value": ev.ia_value}
            if convergence is not None:
                row["gap"] = convergence.gaps[i]
            row.update({"h_x": ev.h_x, "h_y": ev.h_y, "h_xy": ev.h_xy})
            rows.append(row)
        report["sweep"] = rows
    if convergence is not None:
        report["convergence"] = {
            "target": convergence.target,
            "final_tol": convergence_config.final_tol if convergence_config else None,
            "require_shrinking_tail": (
                convergence_config.require_shrinking_tail if convergence_config else None
            ),
            "tail_shrinking": convergence.tail_shrinking,
            "within_final_tol": convergence.within_final_tol,
            "passed": convergence.passed,
        }
    report["version"] = version
    return report


def error_record(path: str, exc: Exception) -> dict[str, Any]:
    """Inline error entry for batch output."""
    return {
        "input": {"path": path},
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def dump_json(value: Any, indent: int | None = 2) -> str:
    """Deterministic JSON with floats at 17 significant digits.

    The standard encoder emits shortest-round-trip floats; reports pin the
    17-digit form instead so the bytes are stable and documented. Keys keep
    insertion order. ``indent=None`` gives the compact one-line form used
    for batch output.
    """
    pieces: list[str] = []
    _emit(value, pieces, indent, 0)
    return "".join(pieces)


def _emit(value: Any, out: list[str], indent: int | None, level: int) -> None:
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise InternalInvariantError(f"non-finite number in report: {value!r}")
        out.append(format(value, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, Mapping):
        _emit_items(
            [(json.dumps(str(k)) + ": ", v) for k, v in value.items()],
            "{", "}", out, indent, level,
        )
    elif isinstance(value, (list, tuple)):
        _emit_items([("", v) for v in value], "[", "]", out, indent, level)
    else:
        raise InternalInvariantError(f"unserializable report value: {value!r}")


def _emit_items(
    items: list[tuple[str, Any]],
    open_ch: str,
    close_ch: str,
    out: list[str],
    indent: int | None,
    level: int,
) -> None:
    if not items:
        out.append(open_ch + close_ch)
        return
    if indent is None:
        out.append(open_ch)
        for i, (prefix, item) in enumerate(items):
            if i:
                out.append(", ")
            out.append(prefix)
            _emit(item, out, indent, level)
        out.append(close_ch)
        return
    pad = " " * (indent * (level + 1))
    out.append(open_ch + "\n")
    for i, (prefix, item) in enumerate(items):
        out.append(pad + prefix)
        _emit(item, out, indent, level + 1)
        out.append(",\n" if i + 1 < len(items) else "\n")
    out.append(" " * (indent * level) + close_ch)
