# backend/pathio.py
"""
Path files.

  csv   header `rank,slab,row,col`, one record per cell in rank order
  json  {"dims": [P, N, M], "order": <spec string>, "cells": [[s, r, c], ...]}
  bin   b"SFC3", version byte, P N M as <u4, then (s, r, c) <u4 records
"""
import io
import os
import sys
import json
import logging
from dataclasses import dataclass
from typing import BinaryIO, Optional

import numpy as np
import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import PATH_FILE_CONFIG
from backend.core import CurveError, CurvePath, Dims3

logger = logging.getLogger(__name__)

CSV_HEADER = PATH_FILE_CONFIG["csv_header"]
MAGIC = PATH_FILE_CONFIG["binary_magic"]
VERSION = PATH_FILE_CONFIG["binary_version"]
RECORD_DTYPE = np.dtype(PATH_FILE_CONFIG["binary_dtype"])


class PathFormatError(RuntimeError):
    pass


@dataclass
class PathRecord:
    """Contents of a path file. `dims` is None for CSV, which has no dims header."""
    cells: np.ndarray
    dims: Optional[Dims3] = None
    order: Optional[str] = None

    def as_path(self, dims: Optional[Dims3] = None) -> CurvePath:
        dims = dims or self.dims
        if dims is None:
            raise PathFormatError("file carries no dims header; pass the volume dims explicitly")
        return CurvePath(dims, self.cells)


def infer_format(filename: Optional[str]) -> Optional[str]:
    if not filename or filename == "-":
        return None
    ext = os.path.splitext(filename)[1].lower().lstrip(".")
    return ext if ext in PATH_FILE_CONFIG["formats"] else None


def detect_format(data: bytes) -> str:
    if data.startswith(MAGIC):
        return "bin"
    head = data.lstrip()[:1]
    if head == b"{":
        return "json"
    if head[:1].isalpha():
        return "csv"
    raise PathFormatError("unrecognized path file: expected SFC3 binary, JSON object or CSV header")


def encode_path(path: CurvePath, fmt: str, order: str = "") -> bytes:
    cells = path.cells
    if fmt == "csv":
        frame = pd.DataFrame(cells, columns=CSV_HEADER[1:])
        frame.insert(0, CSV_HEADER[0], np.arange(len(path), dtype=np.int64))
        return frame.to_csv(index=False, lineterminator="\n").encode("ascii")
    if fmt == "json":
        payload = {"dims": list(path.dims.shape), "order": order, "cells": cells.tolist()}
        return json.dumps(payload, indent=PATH_FILE_CONFIG["json_indent"]).encode("utf-8") + b"\n"
    if fmt == "bin":
        header = MAGIC + bytes([VERSION]) + np.array(path.dims.shape, dtype=RECORD_DTYPE).tobytes()
        return header + cells.astype(RECORD_DTYPE).tobytes()
    raise CurveError(f"unknown format '{fmt}'; expected one of {', '.join(PATH_FILE_CONFIG['formats'])}")


def write_path(path: CurvePath, fmt: str, stream: BinaryIO, order: str = "") -> int:
    data = encode_path(path, fmt, order)
    stream.write(data)
    logger.info(f"Wrote {len(path)} cells as {fmt} ({len(data)} bytes)")
    return len(data)


def _decode_csv(data: bytes) -> PathRecord:
    try:
        frame = pd.read_csv(io.BytesIO(data), dtype="int64")
    except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise PathFormatError(f"bad CSV path file: {e}")
    if list(frame.columns) != CSV_HEADER:
        raise PathFormatError(f"CSV header must be {','.join(CSV_HEADER)}, got {','.join(map(str, frame.columns))}")
    ranks = frame[CSV_HEADER[0]].to_numpy()
    if not np.array_equal(ranks, np.arange(len(frame))):
        bad = int(np.argmax(ranks != np.arange(len(frame))))
        raise PathFormatError(f"CSV rank column out of sequence at record {bad}: {ranks[bad]}")
    return PathRecord(cells=frame[CSV_HEADER[1:]].to_numpy(dtype=np.int64))


def _decode_json(data: bytes) -> PathRecord:
    try:
        payload = json.loads(data.decode("utf-8"))
        dims = Dims3(*payload["dims"])
        raw = payload["cells"]
    except (ValueError, KeyError, TypeError, CurveError) as e:
        raise PathFormatError(f"bad JSON path file: {e}")
    if not isinstance(raw, list) or not all(isinstance(cell, list) and len(cell) == 3 for cell in raw):
        raise PathFormatError("bad JSON path file: cells must be a list of [s, r, c] triples")
    # np.array would silently cast floats and bools
    if not all(isinstance(v, int) and not isinstance(v, bool) for cell in raw for v in cell):
        raise PathFormatError("bad JSON path file: cell coordinates must be integers")
    try:
        cells = np.array(raw, dtype=np.int64).reshape(-1, 3)
    except OverflowError as e:
        raise PathFormatError(f"bad JSON path file: {e}")
    return PathRecord(cells=cells, dims=dims, order=payload.get("order") or None)


def _decode_bin(data: bytes) -> PathRecord:
    head = len(MAGIC) + 1 + 3 * RECORD_DTYPE.itemsize
    if len(data) < head or not data.startswith(MAGIC):
        raise PathFormatError("truncated binary path header")
    version = data[len(MAGIC)]
    if version != VERSION:
        raise PathFormatError(f"unsupported binary path version {version}")
    body = data[head:]
    if len(body) % (3 * RECORD_DTYPE.itemsize):
        raise PathFormatError("binary path body is not a whole number of (s, r, c) records")
    try:
        dims = Dims3(*np.frombuffer(data[len(MAGIC) + 1:head], dtype=RECORD_DTYPE).tolist())
    except CurveError as e:
        raise PathFormatError(f"bad binary dims header: {e}")
    cells = np.frombuffer(body, dtype=RECORD_DTYPE).reshape(-1, 3).astype(np.int64)
    return PathRecord(cells=cells, dims=dims)


def decode_path(data: bytes, fmt: Optional[str] = None) -> PathRecord:
    fmt = fmt or detect_format(data)
    decoders = {"csv": _decode_csv, "json": _decode_json, "bin": _decode_bin}
    if fmt not in decoders:
        raise PathFormatError(f"unknown format '{fmt}'")
    record = decoders[fmt](data)
    logger.info(f"Read {len(record.cells)} cells from {fmt} path file")
    return record


def read_path(stream: BinaryIO, fmt: Optional[str] = None) -> PathRecord:
    return decode_path(stream.read(), fmt)
