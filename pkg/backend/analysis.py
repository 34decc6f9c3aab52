# backend/analysis.py
"""Permutation checks and locality measurements for curve paths."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import numpy as np
import pandas as pd

from backend.core import CurvePath, Dims3, VerificationRequiredError
from backend.hybrid import generate_path
from backend.orderings import OrderingSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyReport:
    complete: bool
    in_bounds: bool
    duplicate_count: int
    missing_count: int
    length: int = 0
    expected: int = 0
    out_of_bounds_count: int = 0

    @property
    def ok(self) -> bool:
        return self.complete and self.in_bounds and self.duplicate_count == 0 and self.missing_count == 0

    def summary(self) -> str:
        status = "OK" if self.ok else "FAILED"
        return (f"{status}: {self.length}/{self.expected} cells, "
                f"complete={self.complete}, in_bounds={self.in_bounds}, "
                f"out_of_bounds={self.out_of_bounds_count}, "
                f"duplicates={self.duplicate_count}, missing={self.missing_count}")


@dataclass(frozen=True)
class LocalityReport:
    step_histogram: Dict[int, int]
    mean_adjacent_rank_gap: Fraction
    max_adjacent_rank_gap: int
    edges_counted: int
    gap_sum: int = 0

    @property
    def mean_decimal(self) -> str:
        mean = self.mean_adjacent_rank_gap
        return f"{mean.numerator / mean.denominator:.6f}"

    def as_row(self, label: str) -> dict:
        return {
            "order": label,
            "mean_gap": str(self.mean_adjacent_rank_gap),
            "mean_gap_decimal": self.mean_decimal,
            "max_gap": self.max_adjacent_rank_gap,
            "edges": self.edges_counted,
            "steps": format_histogram(self.step_histogram),
        }


def format_histogram(histogram: Dict[int, int]) -> str:
    return "{" + ",".join(f"{k}:{v}" for k, v in sorted(histogram.items())) + "}"


def verify_path(path: CurvePath) -> VerifyReport:
    dims = path.dims
    cells = path.cells
    total = dims.total()

    inside = np.all((cells >= 0) & (cells < np.array(dims.shape, dtype=np.int64)), axis=1)
    flat = np.ravel_multi_index(tuple(cells[inside].T), dims.shape) if inside.any() else np.empty(0, dtype=np.int64)
    seen = np.bincount(flat, minlength=total)

    report = VerifyReport(
        complete=len(path) == total,
        in_bounds=bool(inside.all()),
        duplicate_count=int(np.maximum(seen - 1, 0).sum()),
        missing_count=int((seen == 0).sum()),
        length=len(path),
        expected=total,
        out_of_bounds_count=int((~inside).sum()),
    )
    logger.debug(f"verify {dims}: {report.summary()}")
    return report


def step_histogram(path: CurvePath) -> Dict[int, int]:
    if len(path) < 2:
        return {}
    steps = np.abs(np.diff(path.cells, axis=0)).sum(axis=1)
    lengths, counts = np.unique(steps, return_counts=True)
    return {int(k): int(v) for k, v in zip(lengths, counts)}


def grid_edge_count(dims: Dims3) -> int:
    P, N, M = dims.shape
    return P * N * (M - 1) + P * (N - 1) * M + (P - 1) * N * M


def adjacency_locality(path: CurvePath) -> LocalityReport:
    report = verify_path(path)
    if not report.ok:
        raise VerificationRequiredError(f"locality needs a complete permutation: {report.summary()}")

    ranks = path.rank_grid()
    gap_sum, gap_max, edges = 0, 0, 0
    for axis in range(3):
        if ranks.shape[axis] < 2:
            continue
        gaps = np.abs(np.diff(ranks, axis=axis))
        gap_sum += int(gaps.sum(dtype=np.int64))
        gap_max = max(gap_max, int(gaps.max()))
        edges += gaps.size

    mean = Fraction(gap_sum, edges) if edges else Fraction(0)
    return LocalityReport(
        step_histogram=step_histogram(path),
        mean_adjacent_rank_gap=mean,
        max_adjacent_rank_gap=gap_max,
        edges_counted=edges,
        gap_sum=gap_sum,
    )


def compare_orderings(dims: Dims3, specs: Iterable[OrderingSpec]) -> List[Tuple[OrderingSpec, LocalityReport]]:
    rows = []
    for spec in specs:
        path = generate_path(dims, spec)
        rows.append((spec, adjacency_locality(path)))
        logger.info(f"{spec.label()} on {dims}: mean gap {rows[-1][1].mean_decimal}")
    return rows


def locality_table(rows: List[Tuple[OrderingSpec, LocalityReport]]) -> pd.DataFrame:
    columns = ["order", "mean_gap", "mean_gap_decimal", "max_gap", "edges", "steps"]
    return pd.DataFrame([report.as_row(spec.label()) for spec, report in rows], columns=columns)
