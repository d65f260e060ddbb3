"""Command line front end: batch rendering, benchmarks, the HTTP server."""

from __future__ import annotations

import json
import pathlib

import click

from . import bench as bench_mod
from .estimator import ConfluentPCP
from .geometry import render_svg
from .ingest import IngestOptions, parse_file
from .model import EngineError, PlotFrame
from .sampledata import SAMPLES, sample_csv_bytes
from .serialize import layout_to_json


def _parse_bins(spec: str, axes: tuple[str, ...]) -> int | dict[str, int]:
    """"3" applies everywhere; "a=3,b=4" sets axes individually."""
    spec = spec.strip()
    if "=" not in spec:
        return int(spec)
    out: dict[str, int] = {}
    for part in spec.split(","):
        name, _, val = part.partition("=")
        name = name.strip()
        if not name or not val.strip():
            raise click.BadParameter(f"expected NAME=K, got {part!r}", param_hint="--bins")
        if name not in axes:
            raise click.BadParameter(f"unknown axis {name!r}", param_hint="--bins")
        out[name] = int(val)
    return out


def _parse_count(text: str) -> int:
    """Row counts; accepts 1000000 and 1e6 spellings."""
    v = float(text)
    if v < 0 or v != int(v):
        raise click.BadParameter(f"not a row count: {text!r}")
    return int(v)


@click.group()
def main():
    """Confluent-drawing parallel coordinates engine."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False), help="CSV file to read.")
@click.option("--axes", default=None, help="Comma-separated axis names; default: every column.")
@click.option("--bins", default="3", show_default=True, help='Clusters per numeric axis: "3" or "a=3,b=4".')
@click.option("--wmax", default=40.0, show_default=True, help="Max bundle stroke width in px.")
@click.option("--anomaly-threshold", default=0.005, show_default=True, help="Densities below this render dashed.")
@click.option("--tension", default=1.0, show_default=True, help="Bezier control reach in (0, 1].")
@click.option("--plot-width", default=960.0, show_default=True)
@click.option("--plot-height", default=540.0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Output file; .svg or .json picks the format.")
def render(input_path, axes, bins, wmax, anomaly_threshold, tension, plot_width, plot_height, out_path):
    """Render a CSV straight to an SVG plot or a layout JSON document."""
    suffix = pathlib.Path(out_path).suffix.lower()
    if suffix not in (".svg", ".json"):
        raise click.BadParameter("output must end in .svg or .json", param_hint="--out")
    try:
        ds = parse_file(input_path, IngestOptions(), name=pathlib.Path(input_path).stem)
        axis_names = tuple(a.strip() for a in axes.split(",")) if axes else ds.column_names
        model = ConfluentPCP(
            axes=axis_names,
            n_bins=_parse_bins(bins, axis_names),
            w_max=wmax,
            anomaly_threshold=anomaly_threshold,
            curve_tension=tension,
            frame=PlotFrame(width=plot_width, height=plot_height),
        ).fit(ds)
        layout = model.layout()
        text = render_svg(layout) if suffix == ".svg" else layout_to_json(layout) + "\n"
    except EngineError as e:
        raise click.ClickException(f"{e.name}: {e}")
    except ValueError as e:
        raise click.ClickException(str(e))
    # all work done; nothing partial can reach the file
    pathlib.Path(out_path).write_text(text)
    click.echo(f"wrote {out_path}", err=True)


@main.group()
def bench():
    """Timing harnesses; one JSON object per line on stdout."""


@bench.command("cluster")
@click.option("--dims", default=4, show_default=True)
@click.option("--points", default="1e5", show_default=True, help="Row count (1e6 spellings accepted).")
@click.option("--bins", default=3, show_default=True)
@click.option("--repeat", default=5, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--parallel/--no-parallel", default=False, show_default=True, help="Also time a thread-parallel pass.")
def bench_cluster(dims, points, bins, repeat, seed, parallel):
    """Time assignment + pair counting + densities on synthesized data."""
    n = _parse_count(points)
    try:
        row = bench_mod.time_cluster(dims, n, bins, repeat=repeat, seed=seed)
        click.echo(json.dumps(row))
        if parallel:
            row = bench_mod.time_cluster(dims, n, bins, repeat=repeat, seed=seed, parallel=True)
            click.echo(json.dumps(row))
    except (EngineError, MemoryError) as e:
        raise click.ClickException(f"{type(e).__name__}: {e}")


@bench.command("layout")
@click.option("--points", multiple=True, default=("1e3", "1e4", "1e5", "1e6"), show_default=True)
@click.option("--bins", default=3, show_default=True)
@click.option("--dims", default=5, show_default=True)
@click.option("--repeat", default=5, show_default=True)
@click.option("--seed", default=7, show_default=True)
def bench_layout(points, bins, dims, repeat, seed):
    """Time layout compose + serialize per row count; the bundle count must
    come out identical for every positive n."""
    counts = [_parse_count(p) for p in points]
    bundle_counts = set()
    try:
        for n in counts:
            row = bench_mod.time_layout(n, bins, d=dims, repeat=repeat, seed=seed)
            click.echo(json.dumps(row))
            if n > 0:
                bundle_counts.add(row["bundles"])
    except (EngineError, MemoryError) as e:
        raise click.ClickException(f"{type(e).__name__}: {e}")
    if len(bundle_counts) > 1:
        raise click.ClickException(f"bundle count varied with n: {sorted(bundle_counts)}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8765, show_default=True)
@click.option("--max-upload-bytes", default=64 * 1024 * 1024, show_default=True)
@click.option("--persist", "persist_path", default=None, type=click.Path(dir_okay=False), help="Write-through JSON file for view state.")
def serve(host, port, max_upload_bytes, persist_path):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    app = create_app(max_upload_bytes=max_upload_bytes, persist_path=persist_path)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.argument("name", type=click.Choice(SAMPLES))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def sample(name, out_path):
    """Write a bundled sample dataset (cars, occupancy) as CSV."""
    pathlib.Path(out_path).write_bytes(sample_csv_bytes(name))
    click.echo(f"wrote {out_path}", err=True)


if __name__ == "__main__":
    main()
