"""Point-cloud files.

Binary layout (little-endian)::

    b"PCF1" | dtype u8 (0 = f32, 1 = f64) | n u64 | D u64 | n*D values, row-major

CSV: one point per line, comma-separated decimals; lines starting with
``#`` are ignored. Values are written with 17 significant digits so a
float64 survives the round trip.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadMagicError,
    CloudFormatError,
    NonFiniteValueError,
    RaggedRowError,
    TruncatedPayloadError,
)
from .geometry import PointCloud, as_cloud

MAGIC = b"PCF1"
_HEADER = struct.Struct("<4sBQQ")
_DTYPES = {"f32": (0, np.dtype("<f4")), "f64": (1, np.dtype("<f8"))}
_CODES = {code: name for name, (code, _) in _DTYPES.items()}
_CSV_SUFFIXES = {".csv", ".txt"}


@dataclass(frozen=True)
class CloudFile:
    path: Path
    format: str = "binary"
    dtype: str = "f64"
    n: int = 0
    dim: int = 0


def infer_format(path) -> str:
    return "csv" if Path(path).suffix.lower() in _CSV_SUFFIXES else "binary"


def _check_format(fmt: str) -> str:
    if fmt in ("bin", "binary"):
        return "binary"
    if fmt == "csv":
        return fmt
    raise ValueError(f"unknown cloud format {fmt!r}")


def write_cloud(cloud, path, format: str | None = None, dtype: str = "f64") -> CloudFile:
    cloud = as_cloud(cloud)
    path = Path(path)
    fmt = _check_format(format or infer_format(path))
    if dtype not in _DTYPES:
        raise ValueError(f"dtype must be 'f32' or 'f64', got {dtype!r}")
    code, np_dtype = _DTYPES[dtype]
    values = cloud.points.astype(np_dtype)
    if fmt == "binary":
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(MAGIC, code, cloud.n, cloud.dim))
            fh.write(np.ascontiguousarray(values).tobytes())
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f"# n={cloud.n} dim={cloud.dim}\n")
            np.savetxt(fh, values.astype(np.float64), fmt="%.17g", delimiter=",")
    return CloudFile(path, fmt, dtype, cloud.n, cloud.dim)


def _read_binary(path: Path) -> tuple[PointCloud, str]:
    raw = path.read_bytes()
    if len(raw) < len(MAGIC) or raw[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"{path}: missing PCF1 magic")
    if len(raw) < _HEADER.size:
        raise TruncatedPayloadError(f"{path}: header is truncated")
    _, code, n, dim = _HEADER.unpack_from(raw)
    if code not in _CODES:
        raise CloudFormatError(f"{path}: unknown dtype code {code}")
    if n < 1 or dim < 1:
        raise CloudFormatError(f"{path}: empty cloud (n={n}, dim={dim})")
    name = _CODES[code]
    np_dtype = _DTYPES[name][1]
    expected = n * dim * np_dtype.itemsize
    payload = len(raw) - _HEADER.size
    if payload < expected:
        raise TruncatedPayloadError(
            f"{path}: truncated payload, expected {n * dim} values, found {payload // np_dtype.itemsize}"
        )
    if payload > expected:
        raise CloudFormatError(f"{path}: {payload - expected} trailing bytes after payload")
    values = np.frombuffer(raw, dtype=np_dtype, count=n * dim, offset=_HEADER.size).reshape(n, dim)
    if not np.isfinite(values).all():
        raise NonFiniteValueError(f"{path}: payload contains NaN or Inf")
    return PointCloud(values), name


def _read_csv(path: Path) -> PointCloud:
    rows = []
    width = None
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise RaggedRowError(f"{path}:{lineno}: expected {width} values, found {len(fields)}")
            rows.append(fields)
    if not rows:
        raise CloudFormatError(f"{path}: no points")
    try:
        values = np.array(rows, dtype=np.float64)
    except ValueError as exc:
        raise CloudFormatError(f"{path}: unparsable value ({exc})") from None
    if not np.isfinite(values).all():
        bad = int(np.flatnonzero(~np.isfinite(values).all(axis=1))[0])
        raise NonFiniteValueError(f"{path}: non-finite value in point {bad}")
    return PointCloud(values)


def read_cloud(file, format: str | None = None) -> PointCloud:
    """Load a point cloud from a path or :class:`CloudFile`."""
    if isinstance(file, CloudFile):
        path, fmt = file.path, file.format
    else:
        path, fmt = Path(os.fspath(file)), format
    fmt = _check_format(fmt or infer_format(path))
    if fmt == "binary":
        return _read_binary(path)[0]
    return _read_csv(path)


def describe_cloud_file(path) -> CloudFile:
    """Inspect a file and return its metadata."""
    path = Path(path)
    fmt = infer_format(path)
    if fmt == "binary":
        cloud, dtype = _read_binary(path)
    else:
        cloud, dtype = _read_csv(path), "f64"
    return CloudFile(path, fmt, dtype, cloud.n, cloud.dim)
