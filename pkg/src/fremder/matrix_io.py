"""
Reading and writing matrices.

Two formats are understood: Matrix Market (array or coordinate; real,
complex, integer or pattern fields; symmetry tags expanded on read) and a
plain text format whose first line is n, followed by n*n lines "re im" in
row-major order. Files are told apart by the ``%%MatrixMarket`` banner.
"""

import hashlib
import io

import numpy as np
import scipy.io
import scipy.sparse

from .core import FremderError, as_matrix

__all__ = ["MatrixParseError", "read_matrix", "parse_matrix", "write_matrix",
           "format_text", "matrix_digest"]

BANNER = "%%MatrixMarket"


class MatrixParseError(FremderError, ValueError):
    """Raised when a matrix file cannot be parsed."""


def _parse_text(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixParseError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise MatrixParseError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n <= 0:
        raise MatrixParseError("dimension must be positive")
    body = lines[1:]
    if len(body) != n * n:
        raise MatrixParseError(f"expected {n * n} entries, got {len(body)}")
    out = np.empty(n * n, dtype=complex)
    for k, ln in enumerate(body):
        parts = ln.split()
        if len(parts) not in (1, 2):
            raise MatrixParseError(f"entry {k + 1}: expected 're im', got {ln!r}")
        try:
            re = float(parts[0])
            im = float(parts[1]) if len(parts) == 2 else 0.0
        except ValueError:
            raise MatrixParseError(f"entry {k + 1}: not a number: {ln!r}") from None
        out[k] = complex(re, im)
    return out.reshape(n, n)


def _parse_mm(text):
    try:
        m = scipy.io.mmread(io.BytesIO(text.encode()))
    except Exception as exc:  # scipy raises a mix of ValueError / IndexError
        raise MatrixParseError(f"bad Matrix Market data: {exc}") from None
    if scipy.sparse.issparse(m):
        m = m.toarray()
    return np.asarray(m, dtype=complex)


def parse_matrix(text):
    """Parse matrix text in either supported format into a validated array."""
    if text.lstrip().startswith(BANNER):
        m = _parse_mm(text)
    else:
        m = _parse_text(text)
    return as_matrix(m)


def read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixParseError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text)


def format_text(a):
    a = as_matrix(a)
    rows = [str(a.shape[0])]
    rows += [f"{v.real:.17g} {v.imag:.17g}" for v in a.reshape(-1)]
    return "\n".join(rows) + "\n"


def write_matrix(path, a, fmt="text"):
    """Write ``a`` as plain text (default) or Matrix Market (``fmt="mtx"``).

    Both formats carry 17 significant digits, so a read-back is exact.
    """
    a = as_matrix(a)
    if fmt == "text":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_text(a))
    elif fmt == "mtx":
        scipy.io.mmwrite(path, a, field="complex", precision=17)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def matrix_digest(a):
    """SHA-256 of the dimension and little-endian complex128 entries."""
    a = np.ascontiguousarray(as_matrix(a), dtype="<c16")
    h = hashlib.sha256(f"{a.shape[0]}\n".encode())
    h.update(a.tobytes())
    return h.hexdigest()

