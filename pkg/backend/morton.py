# backend/morton.py
"""
Generalized Morton (Z-order) ordering.

Power-of-two volumes are ordered by bit interleaving. Within each bit level
the column bit is the least significant, then the row bit, then the slab bit;
an axis with fewer bits simply drops out of the higher levels. Arbitrary
extents are handled by splitting the volume into eight octants whose first
octant has power-of-two extents, ordering that octant by interleaving and
recursing into the other seven.
"""
import os
import sys
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import MORTON_MAX_BITS
from backend.core import BoundsError, Coord3, CurveError, CurvePath, Dims3

logger = logging.getLogger(__name__)

SLAB, ROW, COL = 0, 1, 2


@dataclass(frozen=True)
class Pow2Shape:
    """A 2^p x 2^n x 2^m volume (slab, row and column bit counts)."""
    p: int
    n: int
    m: int

    def __post_init__(self):
        if min(self.p, self.n, self.m) < 0:
            raise CurveError(f"bit counts must be >= 0, got {self}")
        if self.bits > MORTON_MAX_BITS:
            raise CurveError(f"{self.bits} index bits exceed {MORTON_MAX_BITS}")

    @classmethod
    def from_dims(cls, dims: Dims3) -> "Pow2Shape":
        bits = []
        for extent in dims.shape:
            if extent & (extent - 1):
                raise CurveError(f"extent {extent} of {dims} is not a power of two")
            bits.append(extent.bit_length() - 1)
        return cls(*bits)

    @property
    def bits(self) -> int:
        return self.p + self.n + self.m

    @property
    def dims(self) -> Dims3:
        return Dims3(1 << self.p, 1 << self.n, 1 << self.m)


@dataclass(frozen=True)
class OctantExtents:
    """Extents of octant 0: the largest powers of two not above each extent."""
    slabs: int
    rows: int
    cols: int

    @property
    def dims(self) -> Dims3:
        return Dims3(self.slabs, self.rows, self.cols)


@lru_cache(maxsize=None)
def bit_layout(shape: Pow2Shape) -> Tuple[Tuple[int, int], ...]:
    """(axis, bit level) feeding each Morton index bit, least significant first."""
    widths = {COL: shape.m, ROW: shape.n, SLAB: shape.p}
    layout = []
    for level in range(max(widths.values(), default=0)):
        for axis in (COL, ROW, SLAB):
            if level < widths[axis]:
                layout.append((axis, level))
    return tuple(layout)


def encode_cells(s, r, c, shape: Pow2Shape):
    """Interleave coordinates (ints or integer arrays) into Morton indices."""
    coords = (s, r, c)
    index = c & 0
    for pos, (axis, level) in enumerate(bit_layout(shape)):
        index = index | (((coords[axis] >> level) & 1) << pos)
    return index


def decode_indices(indices, shape: Pow2Shape):
    """Split Morton indices (int or integer array) back into (s, r, c)."""
    coords = [indices & 0] * 3
    for pos, (axis, level) in enumerate(bit_layout(shape)):
        coords[axis] = coords[axis] | (((indices >> pos) & 1) << level)
    return tuple(coords)


def interleave_pow2(coord: Sequence[int], shape: Pow2Shape) -> int:
    if not shape.dims.contains(coord):
        raise BoundsError(f"cell {tuple(coord)} outside {shape.dims}")
    s, r, c = (int(v) for v in coord)
    return encode_cells(s, r, c, shape)


def deinterleave_pow2(index: int, shape: Pow2Shape) -> Coord3:
    index = int(index)
    if not 0 <= index < (1 << shape.bits):
        raise BoundsError(f"Morton index {index} outside a {shape.dims} volume")
    return Coord3(*decode_indices(index, shape))


def octant0_extents(dims: Dims3) -> OctantExtents:
    return OctantExtents(*(1 << (extent.bit_length() - 1) for extent in dims.shape))


@lru_cache(maxsize=256)
def _octant_cells(shape: Pow2Shape) -> np.ndarray:
    indices = np.arange(1 << shape.bits, dtype=np.int64)
    cells = np.stack(decode_indices(indices, shape), axis=1).astype(np.int64)
    cells.setflags(write=False)
    return cells


def _octant_shape(extents: Tuple[int, int, int]) -> Pow2Shape:
    return Pow2Shape(*(e.bit_length() - 1 for e in extents))


def _morton_fill(P: int, N: int, M: int, s0: int, r0: int, c0: int, chunks: List[np.ndarray]):
    if P * N * M == 0:
        return
    S, R, C = (1 << (e.bit_length() - 1) for e in (P, N, M))
    chunks.append(_octant_cells(_octant_shape((S, R, C))) + np.array([s0, r0, c0], dtype=np.int64))

    _morton_fill(S, R, M - C, s0, r0, c0 + C, chunks)
    _morton_fill(S, N - R, C, s0, r0 + R, c0, chunks)
    _morton_fill(S, N - R, M - C, s0, r0 + R, c0 + C, chunks)
    _morton_fill(P - S, R, C, s0 + S, r0, c0, chunks)
    _morton_fill(P - S, R, M - C, s0 + S, r0, c0 + C, chunks)
    _morton_fill(P - S, N - R, C, s0 + S, r0 + R, c0, chunks)
    _morton_fill(P - S, N - R, M - C, s0 + S, r0 + R, c0 + C, chunks)


def morton_general(dims: Dims3) -> CurvePath:
    chunks: List[np.ndarray] = []
    _morton_fill(dims.slabs, dims.rows, dims.cols, 0, 0, 0, chunks)
    logger.debug(f"Morton path for {dims}: {len(chunks)} octant blocks")
    return CurvePath(dims, np.concatenate(chunks))


def morton_rank_table(dims: Dims3) -> np.ndarray:
    """(P, N, M) array: table[s, r, c] is the rank of that cell on morton_general(dims)."""
    return morton_general(dims).rank_grid()
