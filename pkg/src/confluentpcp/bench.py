"""Timing harness for the two pipeline phases.

"cluster" times the row-folding work (per-axis assignment, pair counting,
densities) on synthesized data; it should scale linearly in n * d and not
care about k.  "layout" times composing and serializing the layout from
precomputed aggregates; that cost depends only on the cluster counts, so it
should be flat across n.  Data synthesis is never part of a timed region.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from statistics import mean, median

import numpy as np

from . import binning
from .bundling import aggregate, count_pairs, densities
from .geometry import compose_layout
from .ingest import synthesize
from .model import Column, Dataset, ViewState
from .serialize import layout_to_json

__all__ = ["uniform_view", "time_cluster", "time_layout", "empty_dataset"]


def uniform_view(ds: Dataset, k: int, **kwargs) -> ViewState:
    configs = {c.name: binning.default_config(c, k) for c in ds.columns}
    return ViewState(ds.id, ds.column_names, configs, **kwargs)


def empty_dataset(d: int) -> Dataset:
    cols = [Column.numeric(f"x{i}", np.empty(0)) for i in range(d)]
    return Dataset.build(f"ds-empty-{d}", f"empty-{d}", cols)


def _cluster_once(ds: Dataset, view: ViewState) -> None:
    agg = aggregate(ds, view)
    for m in agg.pair_counts.values():
        densities(m)


def _cluster_once_parallel(ds: Dataset, view: ViewState, pool: ThreadPoolExecutor) -> None:
    axes = view.axis_order
    vec_list = list(
        pool.map(lambda a: binning.assign(view.config(a), ds.column(a)), axes)
    )
    vecs = dict(zip(axes, vec_list))
    keep = np.ones(ds.row_count, dtype=bool)
    for a in axes:
        keep &= vecs[a] >= 0

    def _pair(pair):
        a, b = pair
        return densities(count_pairs(vecs[a], vecs[b], keep, view.config(a).k, view.config(b).k))

    list(pool.map(_pair, view.adjacent_pairs))


def time_cluster(
    d: int, n: int, k: int, repeat: int = 5, seed: int = 7, parallel: bool = False
) -> dict:
    """Median/min/mean seconds for the clustering phase at (d, n, k)."""
    ds = synthesize(d, n, seed)
    view = uniform_view(ds, k)
    pool = ThreadPoolExecutor(max_workers=min(8, d)) if parallel else None
    times = []
    try:
        for _ in range(repeat):
            t0 = time.perf_counter()
            if pool is not None:
                _cluster_once_parallel(ds, view, pool)
            else:
                _cluster_once(ds, view)
            times.append(time.perf_counter() - t0)
    finally:
        if pool is not None:
            pool.shutdown()
    return {
        "phase": "cluster",
        "d": d,
        "n": n,
        "k": k,
        "repeat": repeat,
        "seed": seed,
        "parallel": parallel,
        "t": median(times),
        "t_min": min(times),
        "t_mean": mean(times),
    }


def time_layout(n: int, k: int, d: int = 5, repeat: int = 5, seed: int = 7) -> dict:
    """Median seconds for compose + JSON serialization at row count n.

    Aggregation runs once, untimed; the timed region only sees the O(k^2)
    aggregates, which is the point being measured.
    """
    ds = synthesize(d, n, seed) if n > 0 else empty_dataset(d)
    view = uniform_view(ds, k)
    agg = aggregate(ds, view)
    times = []
    payload = ""
    for _ in range(repeat):
        t0 = time.perf_counter()
        layout = compose_layout(ds, view, agg)
        payload = layout_to_json(layout)
        times.append(time.perf_counter() - t0)
    bundles = sum(len(p.bundles) for p in layout.pairs)
    return {
        "phase": "layout",
        "d": d,
        "n": n,
        "k": k,
        "repeat": repeat,
        "seed": seed,
        "t": median(times),
        "t_min": min(times),
        "t_mean": mean(times),
        "bundles": bundles,
        "bytes": len(payload),
    }
