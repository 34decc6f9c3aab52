import itertools

import numpy as np
import pytest

from backend.analysis import verify_path
from backend.core import Dims3, DivisibilityError, EvenDimensionError, OrderSpecError, row_major_path
from backend.hybrid import block_grid, flat_path, generate_path, hybrid_order
from backend.morton import morton_general
from backend.orderings import HybridSpec, OrderingSpec, parse_order

FLAT = ["rowmajor", "morton", "hilbert"]
CUBE_PREFIX = [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]


def hybrid(block, inter, intra):
    return HybridSpec(block, OrderingSpec(inter), OrderingSpec(intra))


def divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def hilbert_ok(dims):
    return all(extent == 1 or extent % 2 == 0 for extent in dims.shape)


def test_identity_decomposition_is_row_major():
    dims = Dims3(4, 4, 4)
    path = hybrid_order(dims, hybrid(dims, "rowmajor", "rowmajor"))
    assert np.array_equal(path.cells, row_major_path(dims).cells)


@pytest.mark.parametrize("inter,intra", [("morton", "rowmajor"), ("rowmajor", "morton")])
def test_cube_blocks_start_with_one_block(inter, intra):
    path = hybrid_order(Dims3(4, 4, 4), hybrid(Dims3(2, 2, 2), inter, intra))
    assert path.coords()[:8] == CUBE_PREFIX
    assert path[8] == (0, 0, 2)


@pytest.mark.parametrize("inter,intra", list(itertools.product(FLAT, FLAT)))
def test_every_combination_on_4x4x4(inter, intra):
    path = hybrid_order(Dims3(4, 4, 4), hybrid(Dims3(2, 2, 2), inter, intra))
    assert verify_path(path).ok


@pytest.mark.parametrize("shape", [(4, 4, 4), (6, 4, 4)])
def test_all_divisor_decompositions_are_permutations(shape):
    dims = Dims3(*shape)
    for block_shape in itertools.product(*(divisors(n) for n in shape)):
        block = Dims3(*block_shape)
        grid = block_grid(dims, block)
        for inter, intra in itertools.product(FLAT, FLAT):
            if (inter == "hilbert" and not hilbert_ok(grid)) or (intra == "hilbert" and not hilbert_ok(block)):
                continue
            path = hybrid_order(dims, hybrid(block, inter, intra))
            assert verify_path(path).ok, (block, inter, intra)


@pytest.mark.parametrize("inter,intra", [("morton", "hilbert"), ("hilbert", "rowmajor"), ("rowmajor", "morton")])
def test_block_residency(inter, intra):
    dims, block = Dims3(4, 4, 8), Dims3(2, 2, 2)
    spec = hybrid(block, inter, intra)
    path = hybrid_order(dims, spec)
    blocks = flat_path(block_grid(dims, block), spec.inter)
    size = block.total()
    for k, origin in enumerate(blocks):
        chunk = path.cells[k * size:(k + 1) * size]
        lo = np.array(origin) * np.array(block.shape)
        assert ((chunk >= lo) & (chunk < lo + np.array(block.shape))).all()


@pytest.mark.parametrize("kind", FLAT)
def test_identity_laws(kind):
    dims = Dims3(4, 2, 6)
    alone = flat_path(dims, OrderingSpec(kind)).cells
    whole_block = hybrid_order(dims, hybrid(dims, "morton", kind))
    unit_blocks = hybrid_order(dims, hybrid(Dims3(1, 1, 1), kind, "morton"))
    assert np.array_equal(whole_block.cells, alone)
    assert np.array_equal(unit_blocks.cells, alone)


def test_divisibility_error():
    with pytest.raises(DivisibilityError, match="column"):
        hybrid_order(Dims3(4, 4, 6), hybrid(Dims3(2, 2, 4), "rowmajor", "morton"))


def test_hilbert_evenness_applies_to_blocks_and_grid():
    with pytest.raises(EvenDimensionError):
        hybrid_order(Dims3(6, 6, 6), hybrid(Dims3(3, 3, 3), "rowmajor", "hilbert"))
    with pytest.raises(EvenDimensionError):
        hybrid_order(Dims3(6, 6, 6), hybrid(Dims3(2, 2, 2), "hilbert", "rowmajor"))


def test_nested_hybrid_rejected():
    inner = OrderingSpec("hybrid", hybrid=hybrid(Dims3(2, 2, 2), "morton", "morton"))
    with pytest.raises(OrderSpecError):
        HybridSpec(Dims3(2, 2, 2), inner, OrderingSpec("rowmajor"))


def test_generate_path_dispatch():
    dims = Dims3(3, 2, 2)
    assert np.array_equal(generate_path(dims, OrderingSpec("morton")).cells, morton_general(dims).cells)
    spec = parse_order("hybrid", block=Dims3(1, 2, 2), inter="rowmajor", intra="morton")
    assert verify_path(generate_path(dims, spec)).ok


def test_parse_order():
    assert parse_order("Row-Major").kind == "rowmajor"
    assert parse_order("z").label() == "morton"
    assert parse_order("hilbert", allow_odd=True).allow_odd
    compact = parse_order("hybrid:2x2x2:morton:rowmajor")
    assert compact.hybrid.block == Dims3(2, 2, 2)
    assert compact.label() == "hybrid:2x2x2:morton:rowmajor"
    flags = parse_order("hybrid", block="2x2x2", inter="morton", intra="rowmajor")
    assert flags == compact


@pytest.mark.parametrize("text,kwargs", [
    ("peano", {}),
    ("morton:2x2x2", {}),
    ("hybrid", {"block": "2x2x2", "inter": "morton"}),
    ("hybrid", {"block": "2x0x2", "inter": "morton", "intra": "morton"}),
    ("hybrid:2x2x2:hybrid:morton", {}),
    ("hybrid:2x2:morton", {}),
])
def test_parse_order_rejects(text, kwargs):
    with pytest.raises(OrderSpecError):
        parse_order(text, **kwargs)
