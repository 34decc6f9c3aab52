# main.py
"""
Command-line front end.

    gen      write an ordering to a csv/json/bin path file
    verify   check that a path file is a permutation of a volume
    metrics  locality table for one or more orderings
    bench    traverse a volume in path order and time it
    plot     draw one slab of an ordering

Dims are given as PxNxM (slabs x rows x columns). Exit codes: 0 success,
1 I/O or parse failure, 2 invalid arguments, 3 verification failed.
"""
import os
import sys
import logging

import click

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import (
    BENCH_CONFIG, EXIT_CODES, FLAT_ORDER_NAMES, LOG_FORMAT, LOG_LEVEL, ORDER_NAMES, PATH_FILE_CONFIG, PLOTS_DIR,
)
from backend import analysis, bench, pathio
from backend.core import CurveError, Dims3
from backend.hybrid import generate_path
from backend.orderings import OrderingSpec, parse_order

logger = logging.getLogger(__name__)


class DimsType(click.ParamType):
    name = "PxNxM"

    def convert(self, value, param, ctx):
        if isinstance(value, Dims3):
            return value
        try:
            return Dims3.parse(value)
        except CurveError as e:
            self.fail(str(e), param, ctx)


DIMS = DimsType()


def fail(message: str, code: str):
    click.echo(f"Error: {message}", err=True)
    sys.exit(EXIT_CODES[code])


def order_options(func):
    """--block/--inter/--intra/--allow-odd shared by every command that builds an ordering."""
    options = [
        click.option("--block", type=DIMS, default=None, help="Hybrid block size pxnxm"),
        click.option("--inter", type=click.Choice(FLAT_ORDER_NAMES), default=None, help="Hybrid ordering between blocks"),
        click.option("--intra", type=click.Choice(FLAT_ORDER_NAMES), default=None, help="Hybrid ordering within blocks"),
        click.option("--allow-odd", is_flag=True, default=False, help="Permit odd Hilbert extents (diagonal steps)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_spec(order: str, block, inter, intra, allow_odd) -> OrderingSpec:
    try:
        return parse_order(order, block=block, inter=inter, intra=intra, allow_odd=allow_odd)
    except CurveError as e:
        fail(str(e), "invalid")


@click.group()
@click.option("-v", "--verbose", is_flag=True, default=False, help="Debug logging on standard error")
def cli(verbose: bool) -> None:
    """Generalized Morton, Hilbert and hybrid orderings for 3D volumes."""
    logging.basicConfig(level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL),
                        format=LOG_FORMAT, stream=sys.stderr, force=True)


@cli.command()
@click.option("--order", required=True, help=f"One of {', '.join(ORDER_NAMES)} (or hybrid:pxnxm:inter:intra)")
@click.option("--dims", type=DIMS, required=True, help="Volume extents PxNxM")
@click.option("--format", "fmt", type=click.Choice(PATH_FILE_CONFIG["formats"]), default=None,
              help="Output format (default: from --out extension, else csv)")
@click.option("--out", "out_path", type=click.Path(allow_dash=True), default="-", show_default=True)
@order_options
def gen(order, dims, fmt, out_path, block, inter, intra, allow_odd) -> None:
    """Generate an ordering and write it as a path file."""
    spec = build_spec(order, block, inter, intra, allow_odd)
    fmt = fmt or pathio.infer_format(out_path) or PATH_FILE_CONFIG["default_format"]
    try:
        path = generate_path(dims, spec)
    except CurveError as e:
        fail(str(e), "invalid")

    try:
        if out_path == "-":
            pathio.write_path(path, fmt, click.get_binary_stream("stdout"), order=spec.label())
        else:
            with open(out_path, "wb") as fh:
                pathio.write_path(path, fmt, fh, order=spec.label())
            logger.info(f"Path written to {out_path}")
    except OSError as e:
        fail(f"cannot write {out_path}: {e}", "io")


@cli.command()
@click.option("--dims", type=DIMS, required=True, help="Volume extents PxNxM")
@click.option("--in", "in_path", type=click.Path(allow_dash=True), required=True, help="Path file")
@click.option("--format", "fmt", type=click.Choice(PATH_FILE_CONFIG["formats"]), default=None,
              help="Input format (default: detected)")
def verify(dims, in_path, fmt) -> None:
    """Check that a path file visits every cell of the volume exactly once."""
    try:
        if in_path == "-":
            record = pathio.read_path(click.get_binary_stream("stdin"), fmt)
        else:
            with open(in_path, "rb") as fh:
                record = pathio.read_path(fh, fmt)
    except OSError as e:
        fail(f"cannot read {in_path}: {e}", "io")
    except pathio.PathFormatError as e:
        fail(str(e), "io")

    if record.dims is not None and record.dims != dims:
        logger.warning(f"file header says {record.dims}, verifying against --dims {dims}")
    report = analysis.verify_path(record.as_path(dims))
    click.echo(report.summary())
    if not report.ok:
        sys.exit(EXIT_CODES["verify"])


@cli.command()
@click.option("--dims", type=DIMS, required=True, help="Volume extents PxNxM")
@click.option("--order", "orders", multiple=True, required=True, help="Ordering to measure; repeatable")
@click.option("--plot", "plot_path", type=click.Path(), default=None, help="Also save a bar chart (PNG)")
@order_options
def metrics(dims, orders, plot_path, block, inter, intra, allow_odd) -> None:
    """Print adjacent-rank locality for each ordering as CSV."""
    specs = [build_spec(order, block, inter, intra, allow_odd) for order in orders]
    try:
        rows = analysis.compare_orderings(dims, specs)
    except CurveError as e:
        fail(str(e), "invalid")

    table = analysis.locality_table(rows)
    click.echo(table.to_csv(index=False, lineterminator="\n"), nl=False)
    if plot_path:
        from frontend import plots
        try:
            plots.plot_locality(table, plot_path)
        except OSError as e:
            fail(f"cannot write {plot_path}: {e}", "io")


@cli.command(name="bench")
@click.option("--order", required=True, help=f"One of {', '.join(ORDER_NAMES)}")
@click.option("--dims", type=DIMS, required=True, help="Volume extents PxNxM")
@click.option("--kernel", type=click.Choice(BENCH_CONFIG["kernels"]), default="reduce", show_default=True)
@click.option("--repeat", type=click.IntRange(min=1), default=BENCH_CONFIG["repeat"], show_default=True)
@click.option("--seed", type=int, default=BENCH_CONFIG["seed"], show_default=True)
@order_options
def bench_cmd(order, dims, kernel, repeat, seed, block, inter, intra, allow_odd) -> None:
    """Traverse a pseudo-random float64 volume in path order and time it."""
    spec = build_spec(order, block, inter, intra, allow_odd)
    try:
        result = bench.run_bench(dims, spec, kernel=kernel, repeat=repeat, seed=seed)
    except MemoryError:
        fail(f"cannot allocate a {dims} volume", "invalid")
    except CurveError as e:
        fail(str(e), "invalid")
    for line in result.lines():
        click.echo(line)


@cli.command()
@click.option("--order", required=True, help=f"One of {', '.join(ORDER_NAMES)}")
@click.option("--dims", type=DIMS, required=True, help="Volume extents PxNxM")
@click.option("--slab", type=int, default=0, show_default=True, help="Slab to draw")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="PNG file (default: plots/<order>_<dims>_slab<slab>.png)")
@order_options
def plot(order, dims, slab, out_path, block, inter, intra, allow_odd) -> None:
    """Draw one slab of an ordering."""
    from frontend import plots
    spec = build_spec(order, block, inter, intra, allow_odd)
    if out_path is None:
        os.makedirs(PLOTS_DIR, exist_ok=True)
        name = spec.label().replace(":", "_")
        out_path = os.path.join(PLOTS_DIR, f"{name}_{dims}_slab{slab}.png")
    try:
        path = generate_path(dims, spec)
        plots.plot_slab(path, slab, out_path)
    except CurveError as e:
        fail(str(e), "invalid")
    except OSError as e:
        fail(f"cannot write {out_path}: {e}", "io")
    click.echo(f"Wrote: {out_path}")


if __name__ == "__main__":
    cli()
