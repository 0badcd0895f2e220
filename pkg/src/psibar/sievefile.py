"""Binary persistence for sieve tables.

Layout (all little-endian): 8-byte magic "PSIBARV1", u64 limit N, then N
u32 d-values for n = 1..N, then a u64 checksum (sum of the d-values mod
2^64).  Writes go to a temp file in the target directory and are renamed
into place, so a crash never leaves a half-written table behind.
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

from .atlas import SieveTable
from .errors import SieveFileError

MAGIC = b"PSIBARV1"
_HEADER = struct.Struct("<8sQ")
_TAIL = struct.Struct("<Q")


def _checksum(d_values: np.ndarray) -> int:
    return int(np.sum(d_values.astype(np.uint64), dtype=np.uint64))


def save_sieve(table: SieveTable, path: str) -> int:
    """Write the table's d-values to ``path``; returns the stored checksum."""
    payload = np.ascontiguousarray(table.d[1:], dtype="<u4")
    checksum = _checksum(table.d[1:])
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".sieve.tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, table.limit))
            fh.write(payload.tobytes())
            fh.write(_TAIL.pack(checksum))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return checksum


def load_sieve(path: str) -> SieveTable:
    """Read a table back; magic, size, and checksum mismatches all raise."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size + _TAIL.size:
        raise SieveFileError(f"{path}: truncated header")
    magic, limit = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise SieveFileError(f"{path}: bad magic {magic!r}")
    expected = _HEADER.size + 4 * limit + _TAIL.size
    if len(blob) != expected:
        raise SieveFileError(f"{path}: size {len(blob)} != expected {expected} for limit {limit}")
    raw = np.frombuffer(blob, dtype="<u4", count=limit, offset=_HEADER.size)
    (stored,) = _TAIL.unpack_from(blob, expected - _TAIL.size)
    actual = _checksum(raw)
    if stored != actual:
        raise SieveFileError(f"{path}: checksum mismatch (stored {stored}, computed {actual})")
    d = np.empty(limit + 1, dtype=np.int32)
    d[0] = 0
    d[1:] = raw.astype(np.int32)
    return SieveTable(limit=int(limit), d=d, spf=None, backend="file")
