# backend/orderings.py
"""Ordering specifications and their parsing from CLI-style strings."""
import os
import sys
import logging
from dataclasses import dataclass
from typing import Optional

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import FLAT_ORDER_NAMES, ORDER_NAMES
from backend.core import CurveError, Dims3, OrderSpecError

logger = logging.getLogger(__name__)

ALIASES = {
    "row-major": "rowmajor",
    "row_major": "rowmajor",
    "z": "morton",
    "zorder": "morton",
    "gilbert": "hilbert",
}


def _kind(name: str) -> str:
    key = str(name).strip().lower()
    key = ALIASES.get(key, key)
    if key not in ORDER_NAMES:
        raise OrderSpecError(f"unknown ordering '{name}'; expected one of {', '.join(ORDER_NAMES)}")
    return key


@dataclass(frozen=True)
class HybridSpec:
    block: Dims3
    inter: "OrderingSpec"
    intra: "OrderingSpec"

    def __post_init__(self):
        for side in (self.inter, self.intra):
            if side.kind == "hybrid":
                raise OrderSpecError("hybrid orderings cannot be nested")


@dataclass(frozen=True)
class OrderingSpec:
    kind: str
    allow_odd: bool = False
    hybrid: Optional[HybridSpec] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", _kind(self.kind))
        if self.kind == "hybrid" and self.hybrid is None:
            raise OrderSpecError("hybrid ordering needs a block size plus inter and intra orderings")
        if self.kind != "hybrid" and self.hybrid is not None:
            raise OrderSpecError(f"'{self.kind}' does not take hybrid parameters")

    def label(self) -> str:
        if self.kind == "hybrid":
            h = self.hybrid
            return f"hybrid:{h.block}:{h.inter.kind}:{h.intra.kind}"
        return self.kind

    def __str__(self):
        return self.label()


def parse_order(text: str, block=None, inter: Optional[str] = None,
                intra: Optional[str] = None, allow_odd: bool = False) -> OrderingSpec:
    """
    Build an OrderingSpec from a name plus optional hybrid parameters.

    The compact form 'hybrid:PxNxM:inter:intra' carries its own parameters;
    plain 'hybrid' takes them from block/inter/intra.
    """
    parts = str(text).strip().split(":")
    kind = _kind(parts[0])
    if kind != "hybrid":
        if len(parts) > 1:
            raise OrderSpecError(f"unexpected parameters in '{text}'")
        return OrderingSpec(kind, allow_odd=allow_odd)

    if len(parts) == 4:
        block, inter, intra = parts[1], parts[2], parts[3]
    elif len(parts) != 1:
        raise OrderSpecError(f"expected 'hybrid' or 'hybrid:PxNxM:inter:intra', got '{text}'")

    if block is None or inter is None or intra is None:
        raise OrderSpecError("hybrid ordering needs --block, --inter and --intra")
    if not isinstance(block, Dims3):
        try:
            block = Dims3.parse(block)
        except CurveError as e:
            raise OrderSpecError(f"bad hybrid block size: {e}")

    sides = []
    for name in (inter, intra):
        side = _kind(name)
        if side not in FLAT_ORDER_NAMES:
            raise OrderSpecError(f"hybrid sides must be one of {', '.join(FLAT_ORDER_NAMES)}, got '{name}'")
        sides.append(OrderingSpec(side, allow_odd=allow_odd))

    return OrderingSpec("hybrid", allow_odd=allow_odd, hybrid=HybridSpec(block, sides[0], sides[1]))
