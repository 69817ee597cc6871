# msldpc_core/alist.py
"""
MacKay alist reader/writer for sparse binary parity-check matrices.

    n m
    max_col_weight max_row_weight
    column weights (n values)
    row weights (m values)
    n lines: 1-based row indices of each column, zero-padded to max_col_weight
    m lines: 1-based column indices of each row, zero-padded to max_row_weight
"""

from typing import List, TextIO
import logging

import numpy as np

from msldpc_core.errors import AlistFormatError

log = logging.getLogger(__name__)


def _padded(values: List[int], width: int) -> str:
    return " ".join(str(v) for v in values + [0] * (width - len(values)))


def format_alist(H: np.ndarray) -> str:
    H = np.asarray(H)
    if H.ndim != 2 or H.size == 0:
        raise AlistFormatError("alist needs a nonempty 2-D matrix")
    m, n = H.shape
    # alist indices are 1-based; 0 is only ever used as padding
    cols = [(np.flatnonzero(H[:, j]) + 1).tolist() for j in range(n)]
    rows = [(np.flatnonzero(H[i, :]) + 1).tolist() for i in range(m)]
    max_col = max(len(c) for c in cols)
    max_row = max(len(r) for r in rows)
    lines = [
        f"{n} {m}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    lines += [_padded(c, max_col) for c in cols]
    lines += [_padded(r, max_row) for r in rows]
    return "\n".join(lines) + "\n"


def write_alist(H: np.ndarray, stream: TextIO) -> None:
    stream.write(format_alist(H))


def _ints(line: str, lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as e:
        raise AlistFormatError(f"line {lineno}: non-integer token in {line!r}") from e


def parse_alist(text: str) -> np.ndarray:
    """Dense uint8 matrix from alist text; column and row lists must agree."""
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) < 4:
        raise AlistFormatError("alist header needs four lines")
    (l1, h1), (l2, h2), (l3, h3), (l4, h4) = lines[:4]
    dims = _ints(h1, l1)
    if len(dims) != 2 or min(dims) < 1:
        raise AlistFormatError(f"line {l1}: expected 'n m'")
    n, m = dims
    col_w = _ints(h3, l3)
    row_w = _ints(h4, l4)
    if len(col_w) != n or len(row_w) != m:
        raise AlistFormatError("weight lines do not match the declared dimensions")
    body = lines[4:]
    if len(body) < n + m:
        raise AlistFormatError(f"expected {n + m} index lines, found {len(body)}")

    H = np.zeros((m, n), dtype=np.uint8)
    for j, (lineno, ln) in enumerate(body[:n]):
        idx = [v for v in _ints(ln, lineno) if v != 0]
        if len(idx) != col_w[j] or any(not 1 <= v <= m for v in idx):
            raise AlistFormatError(f"line {lineno}: bad row indices for column {j + 1}")
        H[np.asarray(idx, dtype=np.int64) - 1, j] = 1

    H_rows = np.zeros_like(H)
    for i, (lineno, ln) in enumerate(body[n:n + m]):
        idx = [v for v in _ints(ln, lineno) if v != 0]
        if len(idx) != row_w[i] or any(not 1 <= v <= n for v in idx):
            raise AlistFormatError(f"line {lineno}: bad column indices for row {i + 1}")
        H_rows[i, np.asarray(idx, dtype=np.int64) - 1] = 1

    if not np.array_equal(H, H_rows):
        raise AlistFormatError("column lists and row lists describe different matrices")
    return H


def read_alist(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as f:
        H = parse_alist(f.read())
    log.info("read %dx%d parity-check matrix from %s", H.shape[0], H.shape[1], path)
    return H
