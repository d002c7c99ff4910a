"""
data/results.py – CSV emission and read-back of sweep result rows.

Floats are written with 9 significant digits; failed trials carry the scheme
tag ``<scheme>:error`` and ``nan`` in every numeric column.
"""
from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Any, Iterable, List, Optional, Union

from .models import ResultRow

CSV_HEADER = [
    "sweep_variable",
    "sweep_value",
    "trial",
    "scheme",
    "secrecy_bits",
    "rate_bob",
    "rate_eve",
    "outer_iters",
    "runtime_ms",
    "seed",
]
ERROR_SUFFIX = ":error"


def _format_float(value: float) -> str:
    if math.isnan(value):
        return "nan"
    return format(value, ".9g")


def _format_row(row: ResultRow) -> List[str]:
    scheme = row.scheme + ERROR_SUFFIX if row.is_error else row.scheme
    outer = "nan" if row.outer_iters is None else str(row.outer_iters)
    return [
        row.sweep_variable,
        _format_float(row.sweep_value),
        str(row.trial),
        scheme,
        _format_float(row.secrecy_bits),
        _format_float(row.rate_bob),
        _format_float(row.rate_eve),
        outer,
        _format_float(row.runtime_ms),
        str(row.seed),
    ]


def write_csv(rows: Iterable[ResultRow], path: Union[str, Path]) -> None:
    """Write *rows* in the given order under the fixed header."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(_format_row(row))


def _parse_float(value: Any) -> float:
    text = str(value).strip()
    if not text or text.lower() == "nan":
        return math.nan
    return float(text)


def _parse_int(value: Any) -> Optional[int]:
    text = str(value).strip()
    if not text or text.lower() == "nan":
        return None
    return int(float(text))


def parse_row(record: dict) -> ResultRow:
    scheme = record["scheme"]
    error: Optional[str] = None
    if scheme.endswith(ERROR_SUFFIX):
        scheme = scheme[: -len(ERROR_SUFFIX)]
        error = "error"
    return ResultRow(
        sweep_variable=record["sweep_variable"],
        sweep_value=_parse_float(record["sweep_value"]),
        trial=int(record["trial"]),
        scheme=scheme,
        secrecy_bits=_parse_float(record["secrecy_bits"]),
        rate_bob=_parse_float(record["rate_bob"]),
        rate_eve=_parse_float(record["rate_eve"]),
        outer_iters=_parse_int(record["outer_iters"]),
        runtime_ms=_parse_float(record["runtime_ms"]),
        seed=int(record["seed"]),
        error=error,
    )


def read_csv(path: Union[str, Path]) -> List[ResultRow]:
    """Parse a file written by :func:`write_csv`."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {reader.fieldnames!r}")
        return [parse_row(record) for record in reader]
