# backend/hybrid.py
"""
Two-level orderings: the volume is cut into equal p x n x m blocks, the block
grid is ordered by one ordering and the cells of each block by another.
"""
import logging

import numpy as np

from backend.core import CurvePath, Dims3, DivisibilityError, OrderSpecError, row_major_path
from backend.hilbert import hilbert_general
from backend.morton import morton_general
from backend.orderings import HybridSpec, OrderingSpec

logger = logging.getLogger(__name__)


def flat_path(dims: Dims3, spec: OrderingSpec) -> CurvePath:
    """Path for a single-level ordering."""
    if spec.kind == "rowmajor":
        return row_major_path(dims)
    if spec.kind == "morton":
        return morton_general(dims)
    if spec.kind == "hilbert":
        return hilbert_general(dims, allow_odd=spec.allow_odd)
    raise OrderSpecError(f"'{spec.kind}' is not a single-level ordering")


def block_grid(dims: Dims3, block: Dims3) -> Dims3:
    for extent, size, name in zip(dims.shape, block.shape, ("slab", "row", "column")):
        if extent % size:
            raise DivisibilityError(f"block {name} extent {size} does not divide volume extent {extent} of {dims}")
    return Dims3(*(extent // size for extent, size in zip(dims.shape, block.shape)))


def hybrid_order(dims: Dims3, spec: HybridSpec) -> CurvePath:
    if spec.inter.kind == "hybrid" or spec.intra.kind == "hybrid":
        raise OrderSpecError("hybrid orderings cannot be nested")
    grid = block_grid(dims, spec.block)

    inter = flat_path(grid, spec.inter)
    # every block has the same extents, so one intra path serves all of them
    intra = flat_path(spec.block, spec.intra)
    logger.debug(f"Hybrid {dims}: {grid.total()} blocks of {spec.block}, "
                 f"{spec.inter.kind} between, {spec.intra.kind} within")

    origins = inter.cells * np.array(spec.block.shape, dtype=np.int64)
    cells = origins[:, None, :] + intra.cells[None, :, :]
    return CurvePath(dims, cells.reshape(-1, 3))


def generate_path(dims: Dims3, spec: OrderingSpec) -> CurvePath:
    """Path for any ordering spec, hybrid included."""
    if spec.kind == "hybrid":
        return hybrid_order(dims, spec.hybrid)
    return flat_path(dims, spec)
