"""Reading and writing signal matrices as CSV."""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .detector import SignalMatrix

__all__ = ["DataFormatError", "DatasetOptions", "load_signal_matrix", "save_signal_matrix"]


class DataFormatError(ValueError):
    """A signal CSV could not be parsed."""


@dataclass(frozen=True)
class DatasetOptions:
    """Preprocessing for real-data signal matrices.

    ``center`` removes each node's mean before the covariance is formed (on
    by default since empirical data is rarely zero-mean). ``standardize_rows``
    rescales each row to zero mean and unit variance at load time.
    ``transpose`` is for files whose rows are samples rather than nodes.
    """

    center: bool = True
    standardize_rows: bool = False
    transpose: bool = False


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_signal_matrix(path: str | os.PathLike, opts: DatasetOptions = DatasetOptions()) -> SignalMatrix:
    """Load an ``n x m`` signal matrix (one row per node) from CSV.

    A header row and a leading label column are detected automatically: the
    first row is a header if any of its value cells is non-numeric, and the
    first column holds labels if the last row's first cell is non-numeric.

    Raises
    ------
    DataFormatError
        On ragged rows, empty or non-numeric cells, non-finite values, or a
        constant row when ``standardize_rows`` is set. Messages carry the
        1-based line number.
    """
    with open(path, newline="") as fh:
        lines = [(i, row) for i, row in enumerate(csv.reader(fh), start=1) if any(c.strip() for c in row)]
    if not lines:
        raise DataFormatError(f"{path}: no data")

    label_col = not _is_number(lines[-1][1][0].strip())
    start = 1 if label_col else 0
    if any(not _is_number(c.strip()) for c in lines[0][1][start:]):
        lines = lines[1:]
    if not lines:
        raise DataFormatError(f"{path}: header only, no data rows")

    width = len(lines[0][1])
    rows = []
    for lineno, row in lines:
        if len(row) != width:
            raise DataFormatError(f"{path}:{lineno}: expected {width} fields, found {len(row)}")
        values = []
        for cell in row[start:]:
            cell = cell.strip()
            if not cell:
                raise DataFormatError(f"{path}:{lineno}: empty cell")
            try:
                x = float(cell)
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: non-numeric cell {cell!r}") from None
            if not math.isfinite(x):
                raise DataFormatError(f"{path}:{lineno}: non-finite value {cell!r}")
            values.append(x)
        rows.append(values)

    data = np.array(rows, dtype=float)
    if data.size == 0:
        raise DataFormatError(f"{path}: no numeric columns")
    if opts.transpose:
        data = data.T
    if opts.standardize_rows:
        std = data.std(axis=1)
        bad = np.flatnonzero(std == 0)
        if bad.size:
            i = int(bad[0])
            where = f"column {i + 1 + start}" if opts.transpose else f"line {lines[i][0]}"
            raise DataFormatError(f"{path}: {where}: zero variance, cannot standardize")
        data = (data - data.mean(axis=1, keepdims=True)) / std[:, None]
    return SignalMatrix(data)


def save_signal_matrix(y, path: str | os.PathLike) -> None:
    """Write one row per node using shortest round-trip float formatting."""
    data = y.data if isinstance(y, SignalMatrix) else np.asarray(y, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in data:
            writer.writerow([repr(float(x)) for x in row])
