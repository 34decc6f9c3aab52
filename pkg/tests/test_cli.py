import itertools
import json
import re

import numpy as np
import pytest
from click.testing import CliRunner

from backend import pathio
from backend.core import Dims3
from backend.main import cli

FLAT = ["rowmajor", "morton", "hilbert"]


@pytest.fixture
def runner():
    return CliRunner()


def gen_file(runner, tmp_path, order, dims, fmt):
    out = tmp_path / f"path.{fmt}"
    result = runner.invoke(cli, ["gen", "--order", order, "--dims", dims, "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out


def test_gen_morton_csv(runner):
    result = runner.invoke(cli, ["gen", "--order", "morton", "--dims", "3x2x2", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "rank,slab,row,col"
    assert len(lines) == 13
    assert lines[1 + 8] == "8,2,0,0"


def test_gen_single_cell(runner):
    result = runner.invoke(cli, ["gen", "--order", "rowmajor", "--dims", "1x1x1"])
    assert result.exit_code == 0
    assert result.output.splitlines()[1:] == ["0,0,0,0"]


def test_gen_odd_hilbert_is_invalid(runner):
    result = runner.invoke(cli, ["gen", "--order", "hilbert", "--dims", "3x3x3"])
    assert result.exit_code == 2
    assert "even in each dimension" in result.output


def test_gen_odd_hilbert_with_flag(runner):
    result = runner.invoke(cli, ["gen", "--order", "hilbert", "--dims", "3x3x3", "--allow-odd"])
    assert result.exit_code == 0
    # any non-unit step warning goes to stderr, which the runner mixes in
    records = [line for line in result.output.splitlines() if re.fullmatch(r"\d+,\d+,\d+,\d+", line)]
    assert len(records) == 27


@pytest.mark.parametrize("args", [
    ["gen", "--order", "morton", "--dims", "3x0x2"],
    ["gen", "--order", "morton", "--dims", "3x2"],
    ["gen", "--order", "peano", "--dims", "2x2x2"],
    ["gen", "--order", "hybrid", "--dims", "4x4x4", "--block", "2x2x2"],
    ["gen", "--order", "hybrid", "--dims", "4x4x6", "--block", "2x2x4", "--inter", "morton", "--intra", "morton"],
    ["bench", "--order", "morton", "--dims", "2x2x2", "--kernel", "fft"],
])
def test_invalid_arguments_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


MORTON_DIMS = ["x".join(map(str, shape)) for shape in itertools.product((1, 3, 4, 6), repeat=3)]
HILBERT_DIMS = ["2x2x2", "2x4x8", "4x4x4", "6x4x4", "4x6x2", "8x2x6", "6x6x6", "8x8x8"]
HYBRID_ORDERS = [f"hybrid:2x2x2:{inter}:{intra}" for inter, intra in itertools.product(FLAT, FLAT)]
ROUND_TRIPS = (
    [("morton", dims) for dims in MORTON_DIMS]
    + [("hilbert", dims) for dims in HILBERT_DIMS]
    + [(order, "4x4x4") for order in HYBRID_ORDERS]
    + [("rowmajor", "3x4x5"), ("rowmajor", "1x1x1")]
)


@pytest.mark.parametrize("fmt", ["csv", "json", "bin"])
@pytest.mark.parametrize("order,dims", ROUND_TRIPS)
def test_gen_then_verify(runner, tmp_path, fmt, order, dims):
    out = gen_file(runner, tmp_path, order, dims, fmt)
    result = runner.invoke(cli, ["verify", "--dims", dims, "--in", str(out)])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("OK:")


@pytest.mark.parametrize("order,dims", [
    ("morton", "5x3x6"), ("hilbert", "6x4x4"), ("hybrid:2x2x2:hilbert:morton", "4x4x4"), ("rowmajor", "2x3x4"),
])
def test_every_format_decodes_to_the_same_path(runner, tmp_path, order, dims):
    decoded = {}
    for fmt in ("csv", "json", "bin"):
        with open(gen_file(runner, tmp_path, order, dims, fmt), "rb") as fh:
            decoded[fmt] = pathio.read_path(fh).cells
    assert np.array_equal(decoded["csv"], decoded["bin"])
    assert np.array_equal(decoded["csv"], decoded["json"])
    assert len(decoded["bin"]) == Dims3.parse(dims).total()


def test_gen_json_records_order(runner, tmp_path):
    out = gen_file(runner, tmp_path, "hybrid:2x2x2:hilbert:morton", "4x4x4", "json")
    payload = json.loads(out.read_text())
    assert payload["order"] == "hybrid:2x2x2:hilbert:morton"
    assert payload["dims"] == [4, 4, 4]


def test_verify_truncated_file(runner, tmp_path):
    out = gen_file(runner, tmp_path, "morton", "2x2x2", "csv")
    lines = out.read_text().splitlines()
    out.write_text("\n".join(lines[:-1]) + "\n")
    result = runner.invoke(cli, ["verify", "--dims", "2x2x2", "--in", str(out)])
    assert result.exit_code == 3
    assert "missing=1" in result.output


def test_verify_mismatched_dims(runner, tmp_path):
    out = gen_file(runner, tmp_path, "morton", "2x2x2", "csv")
    result = runner.invoke(cli, ["verify", "--dims", "2x2x1", "--in", str(out)])
    assert result.exit_code == 3
    assert "in_bounds=False" in result.output


def test_verify_unreadable_files(runner, tmp_path):
    garbage = tmp_path / "garbage.csv"
    garbage.write_bytes(b"\x00\x01\x02")
    result = runner.invoke(cli, ["verify", "--dims", "2x2x2", "--in", str(garbage)])
    assert result.exit_code == 1
    result = runner.invoke(cli, ["verify", "--dims", "2x2x2", "--in", str(tmp_path / "missing.bin")])
    assert result.exit_code == 1


def test_metrics_row_major(runner):
    result = runner.invoke(cli, ["metrics", "--dims", "2x2x2", "--order", "rowmajor"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "order,mean_gap,mean_gap_decimal,max_gap,edges,steps"
    assert lines[1].startswith("rowmajor,7/3,2.333333,4,12,")
    assert lines[1].endswith('"{1:4,2:2,3:1}"')


def test_metrics_hilbert_histogram(runner):
    result = runner.invoke(cli, ["metrics", "--dims", "4x4x4", "--order", "hilbert"])
    assert result.exit_code == 0
    assert result.output.splitlines()[1].endswith("{1:63}")


def test_metrics_two_orders_with_plot(runner, tmp_path):
    chart = tmp_path / "locality.png"
    result = runner.invoke(cli, ["metrics", "--dims", "6x4x4", "--order", "rowmajor", "--order", "morton",
                                 "--plot", str(chart)])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 3
    assert chart.exists()


def test_bench(runner):
    result = runner.invoke(cli, ["bench", "--order", "hilbert", "--dims", "8x8x8", "--repeat", "2", "--seed", "5"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "order=hilbert dims=8x8x8 kernel=reduce seed=5"
    assert "visits: 512" in lines
    assert lines[-1].startswith("checksum: ")


def test_plot(runner, tmp_path):
    out = tmp_path / "slab.png"
    result = runner.invoke(cli, ["plot", "--order", "morton", "--dims", "2x4x4", "--slab", "1", "--out", str(out)])
    assert result.exit_code == 0
    assert out.exists()
    bad = runner.invoke(cli, ["plot", "--order", "morton", "--dims", "2x4x4", "--slab", "2", "--out", str(out)])
    assert bad.exit_code == 2


def test_directory_paths_are_io_failures(runner, tmp_path):
    result = runner.invoke(cli, ["gen", "--order", "morton", "--dims", "2x2x2", "--out", str(tmp_path)])
    assert result.exit_code == 1
    assert "cannot write" in result.output
    result = runner.invoke(cli, ["verify", "--dims", "2x2x2", "--in", str(tmp_path)])
    assert result.exit_code == 1
    assert "cannot read" in result.output


def test_verify_rejects_fractional_json_cells(runner, tmp_path):
    bad = tmp_path / "fractional.json"
    bad.write_text(json.dumps({"dims": [1, 1, 2], "order": "rowmajor", "cells": [[0, 0, 0.9], [0, 0, 1.2]]}))
    result = runner.invoke(cli, ["verify", "--dims", "1x1x2", "--in", str(bad)])
    assert result.exit_code == 1
    assert "integers" in result.output


@pytest.mark.parametrize("kernel", ["reduce", "stencil"])
@pytest.mark.parametrize("order", FLAT + ["hybrid:4x4x4:morton:hilbert"])
def test_bench_every_kind(runner, order, kernel):
    args = ["bench", "--order", order, "--dims", "16x16x16", "--kernel", kernel, "--repeat", "1", "--seed", "9"]
    first, second = runner.invoke(cli, args), runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    checksums = [line for line in first.output.splitlines() if line.startswith("checksum: ")]
    assert len(checksums) == 1
    assert checksums[0] in second.output.splitlines()
