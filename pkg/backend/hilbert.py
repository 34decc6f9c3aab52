# backend/hilbert.py
"""
Generalized Hilbert ordering for 3D volumes of arbitrary extents.

A block is described by a BlockFrame: the entry corner plus three signed,
axis-aligned vectors. `a` is the travel direction with length w, `b` the
height (h) and `d` the depth. Each block is either walked straight (at least
two extents are 1) or split into two, three or five sub-blocks whose frames
are rotated so that each one is entered next to where the previous one was
left. With all extents even every step of the path is a unit step.

hilbert_rank / hilbert_cell descend the same block plan to map between a cell
and its rank without building the whole path.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from backend.core import (
    BoundsError, Coord3, CurvePath, Dims3, EvenDimensionError, InvalidFrameError,
)

logger = logging.getLogger(__name__)

Vec = Tuple[int, int, int]


class SplitKind(Enum):
    STRAIGHT = "Straight"
    WIDE = "WideSplit2"
    TALL = "TallSplit3"
    DEEP = "DeepSplit3"
    FULL = "FullSplit5"


def _add(*vectors: Sequence[int]) -> Vec:
    return tuple(sum(parts) for parts in zip(*vectors))


def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def _sub(u: Sequence[int], v: Sequence[int]) -> Vec:
    return _add(u, _neg(v))


def _unit(v: Sequence[int]) -> Vec:
    return tuple((x > 0) - (x < 0) for x in v)


def _length(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def _map_abs(v: Sequence[int]) -> Vec:
    return tuple(abs(x) for x in v)


def _is_axis_aligned(v: Sequence[int]) -> bool:
    return len(v) == 3 and sum(1 for x in v if x) == 1


def halve_even(axis: Sequence[int]) -> Vec:
    """
    Half of an axis vector, rounded so that both halves stay even where
    possible: floor(L/2), plus one when that is odd and L > 2.
    """
    if not _is_axis_aligned(axis):
        raise InvalidFrameError(f"cannot halve {tuple(axis)}: not a single-axis vector")
    length = _length(axis)
    half = length // 2
    if half % 2 and length > 2:
        half += 1
    return tuple(u * half for u in _unit(axis))


def classify_split(w: int, h: int, d: int) -> SplitKind:
    if (w == 1) + (h == 1) + (d == 1) >= 2:
        return SplitKind.STRAIGHT
    if 2 * w > 3 * h and 2 * w > 3 * d:
        return SplitKind.WIDE
    if 3 * h > 4 * d:
        return SplitKind.TALL
    if 3 * d > 4 * h:
        return SplitKind.DEEP
    return SplitKind.FULL


@dataclass(frozen=True)
class BlockFrame:
    origin: Coord3
    a: Vec
    b: Vec
    d: Vec

    def __post_init__(self):
        vectors = (self.a, self.b, self.d)
        if not all(_is_axis_aligned(v) for v in vectors):
            raise InvalidFrameError(f"frame axes must each have one nonzero component: {vectors}")
        axes = {next(i for i, x in enumerate(v) if x) for v in vectors}
        if len(axes) != 3:
            raise InvalidFrameError(f"frame axes must lie on distinct dimensions: {vectors}")
        object.__setattr__(self, "origin", Coord3(*(int(x) for x in self.origin)))

    @property
    def extents(self) -> Tuple[int, int, int]:
        """(w, h, d)"""
        return (_length(self.a), _length(self.b), _length(self.d))

    @property
    def shape(self) -> Dims3:
        """Extents in slab x row x column order."""
        return Dims3(*_add(_map_abs(self.a), _map_abs(self.b), _map_abs(self.d)))

    @property
    def volume(self) -> int:
        w, h, d = self.extents
        return w * h * d

    def bounds(self) -> Tuple[Coord3, Coord3]:
        """Inclusive (min corner, max corner) of the cells the frame covers."""
        lo, hi = list(self.origin), list(self.origin)
        for v in (self.a, self.b, self.d):
            for i, x in enumerate(v):
                if x > 0:
                    hi[i] += x - 1
                elif x < 0:
                    lo[i] += x + 1
        return Coord3(*lo), Coord3(*hi)

    def contains(self, coord: Sequence[int]) -> bool:
        lo, hi = self.bounds()
        return all(l <= x <= u for l, x, u in zip(lo, coord, hi))


def hilbert_top_frame(dims: Dims3) -> BlockFrame:
    """
    Travel along the longest extent; height and depth take the other two in
    descending order. Ties go slab, then row, then column.
    """
    order = sorted(range(3), key=lambda axis: (-dims.shape[axis], axis))
    vectors = []
    for axis in order:
        v = [0, 0, 0]
        v[axis] = dims.shape[axis]
        vectors.append(tuple(v))
    return BlockFrame(Coord3(0, 0, 0), *vectors)


def hilbert_block_plan(frame: BlockFrame) -> Tuple[SplitKind, Tuple[BlockFrame, ...]]:
    if not isinstance(frame, BlockFrame):
        raise InvalidFrameError(f"expected a BlockFrame, got {type(frame).__name__}")
    kind = classify_split(*frame.extents)
    if kind is SplitKind.STRAIGHT:
        return kind, ()

    o, a, b, d = frame.origin, frame.a, frame.b, frame.d
    a2, b2, d2 = halve_even(a), halve_even(b), halve_even(d)
    ua, ub, ud = _unit(a), _unit(b), _unit(d)

    if kind is SplitKind.WIDE:
        specs = [
            (o, a2, b, d),
            (_add(o, a2), _sub(a, a2), b, d),
        ]
    elif kind is SplitKind.TALL:
        specs = [
            (o, b2, d, a2),
            (_add(o, b2), a, _sub(b, b2), d),
            (_add(o, _sub(a, ua), _sub(b2, ub)), _neg(b2), d, _neg(_sub(a, a2))),
        ]
    elif kind is SplitKind.DEEP:
        specs = [
            (o, d2, a2, b),
            (_add(o, d2), a, b, _sub(d, d2)),
            (_add(o, _sub(a, ua), _sub(d2, ud)), _neg(d2), _neg(_sub(a, a2)), b),
        ]
    else:
        specs = [
            (o, b2, d2, a2),
            (_add(o, b2), d, a2, _sub(b, b2)),
            (_add(o, _sub(b2, ub), _sub(d, ud)), a, _neg(b2), _neg(_sub(d, d2))),
            (_add(o, _sub(a, ua), b2, _sub(d, ud)), _neg(d), _neg(_sub(a, a2)), _sub(b, b2)),
            (_add(o, _sub(a, ua), _sub(b2, ub)), _neg(b2), d2, _neg(_sub(a, a2))),
        ]

    # halving an extent of 1 leaves an empty child
    children = tuple(
        BlockFrame(Coord3(*origin), x, y, z)
        for origin, x, y, z in specs
        if _length(x) * _length(y) * _length(z) > 0
    )
    return kind, children


def _straight_axis(frame: BlockFrame) -> Vec:
    return max((frame.a, frame.b, frame.d), key=_length)


def _walk(frame: BlockFrame, sink: List[Tuple[int, int, int]]):
    kind, children = hilbert_block_plan(frame)
    if kind is SplitKind.STRAIGHT:
        axis = _straight_axis(frame)
        step = _unit(axis)
        s0, r0, c0 = frame.origin
        sink.extend(
            (s0 + k * step[0], r0 + k * step[1], c0 + k * step[2])
            for k in range(_length(axis))
        )
        return
    for child in children:
        _walk(child, sink)


def check_even(dims: Dims3, allow_odd: bool = False):
    odd = [extent for extent in dims.shape if extent > 1 and extent % 2]
    if odd and not allow_odd:
        raise EvenDimensionError(
            f"Hilbert ordering requires the size of the data volume to be even in each "
            f"dimension (extents of 1 are allowed); {dims} has odd extent(s) {odd}. "
            f"Use allow-odd to accept diagonal steps."
        )


def hilbert_general(dims: Dims3, allow_odd: bool = False) -> CurvePath:
    check_even(dims, allow_odd)
    frame = hilbert_top_frame(dims)
    logger.debug(f"Hilbert path for {dims}: top split {classify_split(*frame.extents).value}")

    sink: List[Tuple[int, int, int]] = []
    _walk(frame, sink)
    path = CurvePath(dims, sink)

    if allow_odd and len(path) > 1:
        steps = np.abs(np.diff(path.cells, axis=0)).sum(axis=1)
        jumps = int((steps != 1).sum())
        if jumps:
            logger.warning(f"Hilbert path for {dims} has {jumps} non-unit step(s)")
    return path


def _descend(dims: Dims3, allow_odd: bool):
    check_even(dims, allow_odd)
    return hilbert_top_frame(dims)


def hilbert_rank(coord: Sequence[int], dims: Dims3, allow_odd: bool = False) -> int:
    """Rank of `coord` on hilbert_general(dims)."""
    frame = _descend(dims, allow_odd)
    if not dims.contains(coord):
        raise BoundsError(f"cell {tuple(coord)} outside volume {dims}")
    rank = 0
    while True:
        kind, children = hilbert_block_plan(frame)
        if kind is SplitKind.STRAIGHT:
            return rank + _length(_sub(coord, frame.origin))
        for child in children:
            if child.contains(coord):
                frame = child
                break
            rank += child.volume


def hilbert_cell(rank: int, dims: Dims3, allow_odd: bool = False) -> Coord3:
    """Cell at position `rank` of hilbert_general(dims)."""
    frame = _descend(dims, allow_odd)
    if not 0 <= rank < dims.total():
        raise BoundsError(f"rank {rank} outside volume {dims} of {dims.total()} cells")
    remaining = int(rank)
    while True:
        kind, children = hilbert_block_plan(frame)
        if kind is SplitKind.STRAIGHT:
            step = _unit(_straight_axis(frame))
            return Coord3(*_add(frame.origin, tuple(remaining * u for u in step)))
        for child in children:
            if remaining < child.volume:
                frame = child
                break
            remaining -= child.volume
