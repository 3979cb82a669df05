"""
Dataset CSV reader and writer.

Header: Y,A1,A2,S1_0,...,S1_{d1-1},S2_0,...,S2_{d2-1}. Floats are written in
shortest round-trip form and read back with pandas' round-trip parser, so a
write/read cycle is bit-exact.

Dependencies: pandas, numpy
System role: External data boundary for the estimate and simulate commands
"""

import re
from pathlib import Path
from typing import TextIO

import numpy as np
import pandas as pd

from seqdr.core.exceptions import DataFormatError
from seqdr.core.model_core.types import Dataset
from seqdr.observability import get_logger

logger = get_logger(__name__)

_S1_COLUMN = re.compile(r"^S1_(\d+)$")
_S2_COLUMN = re.compile(r"^S2_(\d+)$")
_PARSER_LINE = re.compile(r"line (\d+)")


def dataset_columns(d1: int, d2: int) -> list[str]:
    """Return the canonical header for the given block dimensions."""
    return (
        ["Y", "A1", "A2"]
        + [f"S1_{j}" for j in range(d1)]
        + [f"S2_{j}" for j in range(d2)]
    )


def _validate_header(columns: list[str]) -> tuple[int, int]:
    if columns[:3] != ["Y", "A1", "A2"]:
        raise DataFormatError("Header must start with Y,A1,A2", line=1)
    d1 = sum(1 for name in columns if _S1_COLUMN.match(name))
    d2 = sum(1 for name in columns if _S2_COLUMN.match(name))
    if d1 < 1:
        raise DataFormatError("Header needs at least S1_0", line=1, column="S1_0")
    expected = dataset_columns(d1, d2)
    if columns != expected:
        raise DataFormatError(
            "Header columns out of order or unrecognized",
            line=1,
            details={"expected": ",".join(expected)},
        )
    return d1, d2


def _locate_bad_cell(path: Path, columns: list[str]) -> DataFormatError:
    """Re-read as text and report the first cell that is not a finite double."""
    raw = pd.read_csv(path, dtype=str, keep_default_na=False)
    for row_index, row in enumerate(raw.itertuples(index=False, name=None)):
        for column, cell in zip(columns, row):
            try:
                value = float(cell)
            except (TypeError, ValueError):
                return DataFormatError(
                    f"Cannot parse {cell!r} as a number", line=row_index + 2, column=column
                )
            if not np.isfinite(value):
                return DataFormatError(
                    f"Non-finite value {cell!r}", line=row_index + 2, column=column
                )
    return DataFormatError("Malformed CSV", line=None)


def read_dataset(path: str | Path) -> Dataset:
    """
    Load a Dataset from CSV.

    Args:
        path: CSV file with the canonical header

    Returns:
        Dataset: Validated dataset

    Raises:
        DataFormatError: On a bad header, ragged or non-numeric row, or an
            invariant violation; ``details["line"]`` is the 1-based file line
    """
    path = Path(path)
    try:
        header = pd.read_csv(path, nrows=0).columns.tolist()
    except pd.errors.EmptyDataError as e:
        raise DataFormatError("CSV file is empty", line=1) from e
    d1, d2 = _validate_header([str(name).strip() for name in header])

    try:
        frame = pd.read_csv(path, dtype=np.float64, float_precision="round_trip")
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        raise DataFormatError(
            "Row has the wrong number of fields",
            line=int(match.group(1)) if match else None,
        ) from e
    except ValueError as e:
        raise _locate_bad_cell(path, header) from e

    values = frame.to_numpy(dtype=np.float64)
    if values.shape[0] == 0:
        raise DataFormatError("CSV has a header but no rows", line=2)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise DataFormatError("Missing or non-finite value", line=int(row) + 2, column=header[col])

    a1 = values[:, 1]
    a2 = values[:, 2]
    s1 = values[:, 3 : 3 + d1]
    for column, name in ((a1, "A1"), (a2, "A2")):
        rows = np.flatnonzero((column != 0.0) & (column != 1.0))
        if rows.size:
            raise DataFormatError(f"{name} must be 0 or 1", line=int(rows[0]) + 2, column=name)
    rows = np.flatnonzero(s1[:, 0] != 1.0)
    if rows.size:
        raise DataFormatError("S1_0 must equal 1", line=int(rows[0]) + 2, column="S1_0")

    data = Dataset(
        y=values[:, 0],
        a1=a1,
        a2=a2,
        s1=s1,
        s2=values[:, 3 + d1 :].reshape(values.shape[0], d2),
    )
    logger.debug("dataset_loaded", path=str(path), n=data.n, d1=d1, d2=d2)
    return data


def dataset_frame(data: Dataset) -> pd.DataFrame:
    """Lay out a Dataset as a DataFrame with the canonical columns."""
    frame = pd.DataFrame(
        np.column_stack([data.y, data.a1, data.a2, data.s1, data.s2]),
        columns=dataset_columns(data.d1, data.d2),
    )
    return frame.astype({"A1": np.int64, "A2": np.int64})


def write_dataset(data: Dataset, path: str | Path | TextIO) -> None:
    """
    Write a Dataset as CSV with shortest round-trip float formatting.

    Args:
        data: Dataset to export
        path: Destination file path or an open text handle
    """
    dataset_frame(data).to_csv(path, index=False, lineterminator="\n")
    logger.debug("dataset_written", path=str(path), n=data.n)
