"""Matrix Market coordinate-format reading and writing.

Dense matrices are exchanged as sparse coordinate files: one header line,
optional comment lines, a size line, then one entry per line. Writing is
deterministic — entries sorted row-major, values formatted with %.17g so a
read-back reproduces the float64 exactly. Reading validates structure and
reports the offending line number on failure.
"""

from __future__ import annotations

import numpy as np

from .matcore import MatrixError

_HEADER = "%%MatrixMarket matrix coordinate real"
_SYMMETRIES = ("general", "symmetric")


class MatrixMarketError(MatrixError):
    """Malformed Matrix Market content; message carries the line number."""


def _fail(lineno: int, msg: str):
    raise MatrixMarketError(f"line {lineno}: {msg}")


def read_matrix(path) -> np.ndarray:
    """Read a real coordinate Matrix Market file into a dense array.

    Supports general and symmetric storage; symmetric files carry the lower
    triangle and are expanded on read. Unspecified entries are zero.
    """
    with open(path, "r") as fh:
        lines = fh.readlines()
    if not lines:
        raise MatrixMarketError("line 1: empty file")
    head = lines[0].strip().lower().split()
    want = _HEADER.lower().split()
    if len(head) != 5 or head[:4] != want[:4] or head[4] not in _SYMMETRIES:
        _fail(1, f"expected header {_HEADER!r} + general|symmetric, got {lines[0].strip()!r}")
    symmetric = head[4] == "symmetric"

    idx = 1
    while idx < len(lines) and lines[idx].lstrip().startswith("%"):
        idx += 1
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        _fail(len(lines), "missing size line")
    parts = lines[idx].split()
    if len(parts) != 3:
        _fail(idx + 1, f"size line needs 'rows cols entries', got {lines[idx].strip()!r}")
    try:
        rows, cols, nnz = (int(p) for p in parts)
    except ValueError:
        _fail(idx + 1, f"non-integer size line {lines[idx].strip()!r}")
    if rows < 1 or cols < 1 or nnz < 0:
        _fail(idx + 1, f"invalid dimensions {rows} x {cols}, {nnz} entries")
    if symmetric and rows != cols:
        _fail(idx + 1, "symmetric storage requires a square matrix")

    out = np.zeros((rows, cols))
    seen = set()
    count = 0
    for lineno in range(idx + 1, len(lines)):
        text = lines[lineno].strip()
        if not text or text.startswith("%"):
            continue
        parts = text.split()
        if len(parts) != 3:
            _fail(lineno + 1, f"entry needs 'row col value', got {text!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            v = float(parts[2])
        except ValueError:
            _fail(lineno + 1, f"malformed entry {text!r}")
        if not (1 <= i <= rows and 1 <= j <= cols):
            _fail(lineno + 1, f"index ({i}, {j}) outside {rows} x {cols}")
        if symmetric and j > i:
            _fail(lineno + 1, f"upper-triangle entry ({i}, {j}) in symmetric storage")
        if (i, j) in seen:
            _fail(lineno + 1, f"duplicate entry for ({i}, {j})")
        seen.add((i, j))
        out[i - 1, j - 1] = v
        if symmetric and i != j:
            out[j - 1, i - 1] = v
        count += 1
    if count != nnz:
        raise MatrixMarketError(
            f"line {idx + 1}: size line promises {nnz} entries, file has {count}")
    return out


def write_matrix(path, matrix, symmetric: bool = False,
                 comments: tuple[str, ...] = ()) -> None:
    """Write a dense array as a coordinate Matrix Market file.

    Only nonzero entries are stored, in row-major order; symmetric mode
    stores the lower triangle and requires an exactly symmetric input.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.size == 0:
        raise MatrixError("need a non-empty 2-D array")
    if symmetric:
        if a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
            raise MatrixError("symmetric output requires an exactly symmetric square matrix")
    rows, cols = a.shape
    entries = []
    for i in range(rows):
        jmax = i + 1 if symmetric else cols
        for j in range(jmax):
            if a[i, j] != 0.0:
                entries.append((i + 1, j + 1, a[i, j]))
    kind = "symmetric" if symmetric else "general"
    with open(path, "w") as fh:
        fh.write(f"{_HEADER} {kind}\n")
        for c in comments:
            fh.write(f"% {c}\n")
        fh.write(f"{rows} {cols} {len(entries)}\n")
        for i, j, v in entries:
            fh.write(f"{i} {j} {v:.17g}\n")
