# backend/bench.py
"""
Traversal micro-benchmark.

A float64 volume is visited in path order: the flat row-major index of every
cell is taken from the path and the volume is gathered through it, so the
memory access pattern is the ordering's. Path generation, the flat index
array and the stencil's neighbour table are all built before timing starts,
so a reported time covers only the gathers and sums. No claims are made about the
numbers; they are for the user's own experiments with orderings and block
sizes.
"""
import os
import sys
import time
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import BENCH_CONFIG
from backend.core import CurveError, CurvePath, Dims3
from backend.hybrid import generate_path
from backend.orderings import OrderingSpec

logger = logging.getLogger(__name__)

KERNELS = BENCH_CONFIG["kernels"]


class BenchAllocationError(CurveError):
    pass


@dataclass
class BenchResult:
    order: str
    dims: Dims3
    kernel: str
    seed: int
    checksum: float = 0.0
    visits: int = 0
    timings: List[float] = field(default_factory=list)

    @property
    def best(self) -> float:
        return min(self.timings) if self.timings else 0.0

    @property
    def cells_per_second(self) -> float:
        return self.visits / self.best if self.best > 0 else float("inf")

    def lines(self) -> List[str]:
        out = [f"order={self.order} dims={self.dims} kernel={self.kernel} seed={self.seed}"]
        for i, t in enumerate(self.timings, 1):
            rate = self.visits / t if t > 0 else float("inf")
            out.append(f"repeat {i}: {t:.6f} s ({rate:.3e} cells/s)")
        out.append(f"min: {self.best:.6f} s ({self.cells_per_second:.3e} cells/s)")
        out.append(f"visits: {self.visits}")
        out.append(f"checksum: {self.checksum:.17g}")
        return out


def _check_memory(dims: Dims3):
    # volume, gathered copy and the int64 index array
    needed = dims.total() * (2 * BENCH_CONFIG["element_bytes"] + 8)
    if needed > BENCH_CONFIG["max_bytes"]:
        raise BenchAllocationError(
            f"benchmark on {dims} needs about {needed / 1024 ** 2:.0f} MiB, "
            f"limit is {BENCH_CONFIG['max_bytes'] / 1024 ** 2:.0f} MiB")


def make_volume(dims: Dims3, seed: int = BENCH_CONFIG["seed"]) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.random(dims.shape, dtype=np.float64)


def _neighbour_table(path: CurvePath, flat: np.ndarray):
    """For each of the six directions: (flat index of the neighbour, in-bounds mask), in path order."""
    dims = path.dims
    strides = (dims.rows * dims.cols, dims.cols, 1)
    table = []
    for axis in range(3):
        coord = path.cells[:, axis]
        for sign in (-1, 1):
            valid = (coord + sign >= 0) & (coord + sign < dims.shape[axis])
            table.append((np.where(valid, flat + sign * strides[axis], 0), valid))
    return table


def reduce_kernel(volume: np.ndarray, flat: np.ndarray) -> float:
    values = volume.ravel().take(flat)
    # cumsum is a strict left-to-right sum, so the result follows path order
    return float(np.cumsum(values)[-1]) if len(values) else 0.0


def stencil_kernel(volume: np.ndarray, flat: np.ndarray, neighbours) -> float:
    data = volume.ravel()
    sums = np.zeros(len(flat), dtype=np.float64)
    for index, valid in neighbours:
        sums += np.where(valid, data.take(index), 0.0)
    return float(np.cumsum(sums)[-1]) if len(sums) else 0.0


def run_bench(dims: Dims3, spec: OrderingSpec, kernel: str = "reduce",
              repeat: int = BENCH_CONFIG["repeat"], seed: int = BENCH_CONFIG["seed"]) -> BenchResult:
    if kernel not in KERNELS:
        raise CurveError(f"unknown kernel '{kernel}'; expected one of {', '.join(KERNELS)}")
    if repeat < 1:
        raise CurveError(f"repeat must be >= 1, got {repeat}")
    _check_memory(dims)

    path = generate_path(dims, spec)
    try:
        volume = make_volume(dims, seed)
    except MemoryError:
        raise BenchAllocationError(f"could not allocate a {dims} float64 volume")
    flat = path.flat_indices()
    neighbours = _neighbour_table(path, flat) if kernel == "stencil" else None

    result = BenchResult(order=spec.label(), dims=dims, kernel=kernel, seed=seed)
    for i in range(repeat):
        start = time.perf_counter()
        if kernel == "reduce":
            checksum = reduce_kernel(volume, flat)
        else:
            checksum = stencil_kernel(volume, flat, neighbours)
        elapsed = time.perf_counter() - start
        result.timings.append(elapsed)
        logger.debug(f"bench {spec.label()} {kernel} repeat {i + 1}: {elapsed:.6f}s")

    result.checksum = checksum
    result.visits = len(flat)
    return result
