"""Text formats: vector files, matrix files and dataset CSVs.

Vector and matrix files hold one comma-separated row per line. Entries are
decimal literals or integer ratios ``p/q``. Blank lines and lines starting
with ``#`` are skipped.
"""

import csv
import io as _io
from pathlib import Path

from ninner.applications import Dataset
from ninner.core import SquareMatrix, Vector
from ninner.errors import DimensionMismatchError, ParseError
from ninner.scalar import EXACT, format_scalar, parse_scalar


def _rows(text, mode):
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, [parse_scalar(tok, mode, lineno) for tok in line.split(",")]))
    return rows


def parse_vectors(text, mode=EXACT):
    rows = _rows(text, mode)
    if not rows:
        raise ParseError("no vectors found")
    dim = len(rows[0][1])
    out = []
    for lineno, r in rows:
        if len(r) != dim:
            err = DimensionMismatchError(dim, len(r))
            err.line = lineno
            err.args = (f"line {lineno}: vector has length {len(r)}, expected {dim}",)
            raise err
        out.append(Vector._raw(r, mode))
    return out


def parse_matrix(text, mode=EXACT):
    rows = _rows(text, mode)
    if not rows:
        raise ParseError("no matrix rows found")
    n = len(rows)
    for lineno, r in rows:
        if len(r) != n:
            err = DimensionMismatchError(n, len(r), "matrix row")
            err.line = lineno
            err.args = (f"line {lineno}: row has {len(r)} entries, matrix has {n} rows",)
            raise err
    return SquareMatrix(n, tuple(v for _, r in rows for v in r), mode)


def parse_dataset(text, x=None, y=None, z=None, mode=EXACT):
    """Read a CSV with a header row.

    ``x`` and ``y`` name the predictor columns and ``z`` the response; the
    defaults are the first three columns in order.
    """
    reader = csv.reader(_io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty CSV") from None
    names = [x, y, z]
    defaults = header[:3]
    if len(defaults) < 3 and None in names:
        raise ParseError("CSV needs three columns or explicit column names", 1)
    names = [n if n is not None else d for n, d in zip(names, defaults + [None] * 3)]
    idx = []
    for name in names:
        if name not in header:
            raise ParseError(f"no column named {name!r}", 1)
        idx.append(header.index(name))
    cols = ([], [], [])
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", lineno)
        for col, i in zip(cols, idx):
            col.append(parse_scalar(row[i], mode, lineno))
    return Dataset(*cols, mode=mode)


def dataset_header(path):
    with open(path, newline="") as fh:
        row = next(csv.reader(fh), None)
    if row is None:
        raise ParseError("empty CSV")
    return [h.strip() for h in row]


def read_vectors(path, mode=EXACT):
    return parse_vectors(Path(path).read_text(), mode)


def read_matrix(path, mode=EXACT):
    return parse_matrix(Path(path).read_text(), mode)


def read_dataset(path, x=None, y=None, z=None, mode=EXACT):
    return parse_dataset(Path(path).read_text(), x, y, z, mode)


def format_rows(rows):
    """Inverse of the row parser: one comma-separated line per row."""
    return "".join(",".join(format_scalar(v) for v in r) + "\n" for r in rows)
