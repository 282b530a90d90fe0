"""MatrixFile JSON format.

    {"rows": 2, "cols": 2, "entries": [[[0, 0], [-1, 0]], [[1, 0], [0, 0]]]}

Each entry is a ``[re, im]`` pair. Numbers are written with 17 significant
digits so a save/load round trip reproduces every double exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EvposError


class MatrixFileError(EvposError, ValueError):
    """Malformed matrix file; the message names the offending location."""


@dataclass(frozen=True)
class MatrixFile:
    rows: int
    cols: int
    entries: tuple[tuple[complex, ...], ...]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.complex128).reshape(self.rows, self.cols)

    @classmethod
    def from_array(cls, M) -> MatrixFile:
        M = np.asarray(M, dtype=np.complex128)
        if M.ndim != 2:
            raise MatrixFileError(f"expected a 2-d array, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise MatrixFileError("matrix has non-finite entries")
        return cls(M.shape[0], M.shape[1], tuple(tuple(complex(z) for z in row) for row in M))


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise MatrixFileError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise MatrixFileError(f"{where}: number is not finite")
    return x


def parse_matrix(data, source: str = "<data>") -> MatrixFile:
    if not isinstance(data, dict):
        raise MatrixFileError(f"{source}: top level must be an object")
    for key in ("rows", "cols", "entries"):
        if key not in data:
            raise MatrixFileError(f"{source}: missing field {key!r}")
    rows, cols = data["rows"], data["cols"]
    for key, val in (("rows", rows), ("cols", cols)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise MatrixFileError(f"{source}: {key} must be a positive integer, got {val!r}")
    entries = data["entries"]
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFileError(f"{source}: entries must be a list of {rows} rows")
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"{source}: entries[{i}] must be a list of {cols} entries")
        parsed = []
        for j, pair in enumerate(row):
            where = f"{source}: entries[{i}][{j}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise MatrixFileError(f"{where}: expected a [re, im] pair, got {pair!r}")
            parsed.append(complex(_number(pair[0], where), _number(pair[1], where)))
        out.append(tuple(parsed))
    return MatrixFile(rows, cols, tuple(out))


def load_matrix_file(path) -> MatrixFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_matrix(data, str(path))


def load_matrix(path) -> np.ndarray:
    return load_matrix_file(path).to_array()


def _fmt(x: float) -> str:
    return format(x, ".17g")


def dumps_matrix(M) -> str:
    mf = M if isinstance(M, MatrixFile) else MatrixFile.from_array(M)
    rows = []
    for row in mf.entries:
        rows.append("[" + ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in row) + "]")
    body = ",\n    ".join(rows)
    return f'{{\n  "rows": {mf.rows},\n  "cols": {mf.cols},\n  "entries": [\n    {body}\n  ]\n}}\n'


def save_matrix(path, M) -> None:
    Path(path).write_text(dumps_matrix(M))
