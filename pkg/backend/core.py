# backend/core.py
"""
Shared volume and path types.

A volume is P slabs x N rows x M columns; a cell is addressed (s, r, c) and
row-major order varies the column fastest. A CurvePath stores the cells of an
ordering in rank order as a read-only (K, 3) int64 array.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

RANK_LIMIT = 2 ** 64


class CurveError(ValueError):
    """Base class for every invalid-input condition in the curve library."""


class BoundsError(CurveError):
    pass


class InvalidFrameError(CurveError):
    pass


class EvenDimensionError(CurveError):
    pass


class DivisibilityError(CurveError):
    pass


class OrderSpecError(CurveError):
    pass


class VerificationRequiredError(CurveError):
    pass


class Coord3(NamedTuple):
    s: int
    r: int
    c: int


# The six axis-aligned moves, in (s, r, c) order
UNIT_STEPS = (
    (1, 0, 0), (-1, 0, 0),
    (0, 1, 0), (0, -1, 0),
    (0, 0, 1), (0, 0, -1),
)


def is_unit_step(vector: Sequence[int]) -> bool:
    return tuple(int(v) for v in vector) in UNIT_STEPS


@dataclass(frozen=True)
class Dims3:
    slabs: int
    rows: int
    cols: int

    def __post_init__(self):
        for name in ("slabs", "rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise CurveError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise CurveError(f"{name} must be >= 1, got {value}")
            object.__setattr__(self, name, int(value))
        if self.slabs * self.rows * self.cols >= RANK_LIMIT:
            raise CurveError(f"volume {self} does not fit in 64-bit ranks")

    @classmethod
    def parse(cls, text: str) -> "Dims3":
        """Parse 'PxNxM' (slabs x rows x columns)."""
        parts = str(text).strip().lower().split("x")
        if len(parts) != 3:
            raise CurveError(f"expected PxNxM, got '{text}'")
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise CurveError(f"expected integer extents in '{text}'")
        return cls(*values)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.slabs, self.rows, self.cols)

    def total(self) -> int:
        return self.slabs * self.rows * self.cols

    def contains(self, coord: Sequence[int]) -> bool:
        s, r, c = coord
        return 0 <= s < self.slabs and 0 <= r < self.rows and 0 <= c < self.cols

    def __str__(self):
        return f"{self.slabs}x{self.rows}x{self.cols}"


def linear_index(coord: Sequence[int], dims: Dims3) -> int:
    if not dims.contains(coord):
        raise BoundsError(f"cell {tuple(coord)} outside volume {dims}")
    s, r, c = coord
    return (s * dims.rows + r) * dims.cols + c


def coord_of(rank: int, dims: Dims3) -> Coord3:
    if not 0 <= rank < dims.total():
        raise BoundsError(f"rank {rank} outside volume {dims} of {dims.total()} cells")
    sr, c = divmod(int(rank), dims.cols)
    s, r = divmod(sr, dims.rows)
    return Coord3(s, r, c)


class CurvePath:
    """
    An ordering of a volume's cells: cells[k] is the cell at rank k.

    Construction does not validate the cells, so paths read back from files
    can describe bad data; use analysis.verify_path to check them.
    """

    __slots__ = ("dims", "cells")

    def __init__(self, dims: Dims3, cells):
        arr = np.array(cells, dtype=np.int64).reshape(-1, 3)
        arr.setflags(write=False)
        self.dims = dims
        self.cells = arr

    def __len__(self):
        return self.cells.shape[0]

    def __getitem__(self, rank: int) -> Coord3:
        s, r, c = self.cells[rank]
        return Coord3(int(s), int(r), int(c))

    def __iter__(self) -> Iterator[Coord3]:
        for s, r, c in self.cells.tolist():
            yield Coord3(s, r, c)

    def __repr__(self):
        return f"CurvePath(dims={self.dims}, cells={len(self)})"

    def coords(self) -> List[Coord3]:
        return [Coord3(*cell) for cell in self.cells.tolist()]

    def flat_indices(self) -> np.ndarray:
        """Row-major linear index of every cell, in rank order."""
        return np.ravel_multi_index(tuple(self.cells.T), self.dims.shape)

    def rank_grid(self) -> np.ndarray:
        """(P, N, M) array holding the rank of each cell. The path must be a permutation."""
        if len(self) != self.dims.total():
            raise VerificationRequiredError(
                f"path has {len(self)} cells, volume {self.dims} needs {self.dims.total()}")
        grid = np.full(self.dims.total(), -1, dtype=np.int64)
        grid[self.flat_indices()] = np.arange(len(self), dtype=np.int64)
        if (grid < 0).any():
            raise VerificationRequiredError(f"path over {self.dims} is not a permutation")
        return grid.reshape(self.dims.shape)

    def offset(self, origin: Sequence[int], dims: Optional[Dims3] = None) -> "CurvePath":
        return CurvePath(dims or self.dims, self.cells + np.asarray(origin, dtype=np.int64))


def row_major_path(dims: Dims3) -> CurvePath:
    flat = np.arange(dims.total(), dtype=np.int64)
    cells = np.stack(np.unravel_index(flat, dims.shape), axis=1)
    return CurvePath(dims, cells)
