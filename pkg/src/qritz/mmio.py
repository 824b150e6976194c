"""Matrix Market reader/writer for dense complex matrices.

Reads ``array`` and ``coordinate`` formats with ``real``, ``complex`` and
``integer`` fields; ``symmetric``, ``hermitian`` and ``skew-symmetric``
storage is expanded to the full matrix.  ``pattern`` files carry no values
and are rejected.  Everything is returned dense (complex128): this package
targets desk-scale problems.

The writer always emits ``array complex general`` with 17 significant
digits, which round-trips float64 exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import ParseError, UnsupportedField

_FORMATS = ("array", "coordinate")
_FIELDS = ("real", "complex", "integer")
_SYMMETRIES = ("general", "symmetric", "hermitian", "skew-symmetric")


def _fail(path: str, lineno: int, msg: str):
    raise ParseError(f"{path}:{lineno}: {msg}")


def _parse_value(tokens: list[str], field: str, path: str, lineno: int) -> complex:
    try:
        if field == "complex":
            if len(tokens) != 2:
                _fail(path, lineno, f"expected 2 value tokens, got {len(tokens)}")
            return complex(float(tokens[0]), float(tokens[1]))
        if len(tokens) != 1:
            _fail(path, lineno, f"expected 1 value token, got {len(tokens)}")
        if field == "integer":
            return complex(int(tokens[0]))
        return complex(float(tokens[0]))
    except ValueError:
        _fail(path, lineno, f"malformed number {' '.join(tokens)!r}")


def read_matrix_market(path) -> np.ndarray:
    """Read a Matrix Market file as a dense complex matrix.

    Raises:
        ParseError: on malformed content; the message names the line.
        UnsupportedField: for ``pattern`` files.
        OSError: if the file cannot be opened.
    """
    path = str(path)
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()

    if not lines:
        _fail(path, 1, "empty file")
    header = lines[0].split()
    if len(header) != 5 or header[0] != "%%MatrixMarket" or header[1].lower() != "matrix":
        _fail(path, 1, f"bad header {lines[0]!r}")
    fmt, field, symmetry = (tok.lower() for tok in header[2:5])
    if field == "pattern":
        raise UnsupportedField(f"{path}:1: pattern matrices carry no values")
    if fmt not in _FORMATS:
        _fail(path, 1, f"unsupported format {fmt!r}")
    if field not in _FIELDS:
        _fail(path, 1, f"unsupported field {field!r}")
    if symmetry not in _SYMMETRIES:
        _fail(path, 1, f"unsupported symmetry {symmetry!r}")

    # Skip comment/blank lines up to the size line.
    idx = 1
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("%")):
        idx += 1
    if idx >= len(lines):
        _fail(path, len(lines), "missing size line")
    size_tokens = lines[idx].split()
    size_lineno = idx + 1

    if fmt == "array":
        if len(size_tokens) != 2:
            _fail(path, size_lineno, "array size line must be 'rows cols'")
        try:
            rows, cols = int(size_tokens[0]), int(size_tokens[1])
        except ValueError:
            _fail(path, size_lineno, f"malformed size line {lines[idx]!r}")
        if rows < 1 or cols < 1:
            _fail(path, size_lineno, "dimensions must be positive")
        if symmetry != "general" and rows != cols:
            _fail(path, size_lineno, f"{symmetry} storage requires a square matrix")
        out = np.zeros((rows, cols), dtype=np.complex128)
        entries = _entry_positions_array(rows, cols, symmetry)
        pos = 0
        for lineno in range(size_lineno + 1, len(lines) + 1):
            raw = lines[lineno - 1]
            stripped = raw.strip()
            if not stripped or stripped.startswith("%"):
                continue
            if pos >= len(entries):
                _fail(path, lineno, "more entries than the size line announces")
            i, j = entries[pos]
            val = _parse_value(stripped.split(), field, path, lineno)
            _store(out, i, j, val, symmetry)
            pos += 1
        if pos != len(entries):
            _fail(path, len(lines), f"expected {len(entries)} entries, found {pos}")
        return out

    # coordinate
    if len(size_tokens) != 3:
        _fail(path, size_lineno, "coordinate size line must be 'rows cols nnz'")
    try:
        rows, cols, nnz = (int(t) for t in size_tokens)
    except ValueError:
        _fail(path, size_lineno, f"malformed size line {lines[idx]!r}")
    if rows < 1 or cols < 1 or nnz < 0:
        _fail(path, size_lineno, "dimensions must be positive")
    if symmetry != "general" and rows != cols:
        _fail(path, size_lineno, f"{symmetry} storage requires a square matrix")
    out = np.zeros((rows, cols), dtype=np.complex128)
    seen = 0
    for lineno in range(size_lineno + 1, len(lines) + 1):
        raw = lines[lineno - 1]
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if seen >= nnz:
            _fail(path, lineno, "more entries than the size line announces")
        tokens = stripped.split()
        if len(tokens) < 3:
            _fail(path, lineno, f"coordinate entry needs 'i j value', got {raw!r}")
        try:
            i, j = int(tokens[0]) - 1, int(tokens[1]) - 1
        except ValueError:
            _fail(path, lineno, f"malformed indices in {raw!r}")
        if not (0 <= i < rows and 0 <= j < cols):
            _fail(path, lineno, f"index ({i + 1}, {j + 1}) outside {rows} x {cols}")
        if symmetry != "general" and i < j:
            _fail(path, lineno, f"{symmetry} storage must only hold the lower triangle")
        val = _parse_value(tokens[2:], field, path, lineno)
        _store(out, i, j, val, symmetry)
        seen += 1
    if seen != nnz:
        _fail(path, len(lines), f"expected {nnz} entries, found {seen}")
    return out


def _entry_positions_array(rows: int, cols: int, symmetry: str) -> list[tuple[int, int]]:
    """Column-major storage positions for the given array symmetry."""
    pos = []
    for j in range(cols):
        if symmetry == "general":
            start = 0
        elif symmetry == "skew-symmetric":
            start = j + 1
        else:
            start = j
        for i in range(start, rows):
            pos.append((i, j))
    return pos


def _store(out: np.ndarray, i: int, j: int, val: complex, symmetry: str):
    out[i, j] = val
    if i == j or symmetry == "general":
        return
    if symmetry == "symmetric":
        out[j, i] = val
    elif symmetry == "hermitian":
        out[j, i] = val.conjugate()
    elif symmetry == "skew-symmetric":
        out[j, i] = -val


def write_matrix_market(path, matrix) -> None:
    """Write a dense matrix as ``array complex general`` with full precision."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    rows, cols = m.shape
    with open(str(path), "w", encoding="ascii", newline="\n") as fh:
        fh.write("%%MatrixMarket matrix array complex general\n")
        fh.write(f"{rows} {cols}\n")
        for j in range(cols):
            for i in range(rows):
                v = m[i, j]
                fh.write(f"{v.real:.16e} {v.imag:.16e}\n")
