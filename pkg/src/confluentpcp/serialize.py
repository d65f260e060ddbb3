"""JSON wire forms for layouts and dataset schemas.

The layout document is the contract between engine, CLI, and browser client;
its field set is documented in docs/layout-schema.md.  Dicts preserve
insertion order, so dumps are deterministic without key sorting.
"""

from __future__ import annotations

import json
from typing import Any

from .model import AxisLayout, BundleLayout, Dataset, Kind, PairLayout


def frame_to_dict(frame) -> dict[str, float]:
    return {
        "width": frame.width,
        "height": frame.height,
        "margin_top": frame.margin_top,
        "margin_right": frame.margin_right,
        "margin_bottom": frame.margin_bottom,
        "margin_left": frame.margin_left,
    }


def _axis_to_dict(ax: AxisLayout) -> dict[str, Any]:
    d: dict[str, Any] = {"name": ax.name, "kind": ax.kind.value, "x": ax.x}
    if ax.kind is Kind.NUMERIC:
        d["domain"] = [ax.lo, ax.hi]
        d["boundaries"] = list(ax.boundaries)
        d["boundary_y"] = list(ax.boundary_y)
        d["clusters"] = [
            {
                "center": b.center,
                "radius": b.radius,
                "count": b.count,
                "y": b.y,
                "y0": b.y0,
                "y1": b.y1,
            }
            for b in ax.clusters
        ]
    else:
        d["categories"] = list(ax.categories)
        d["clusters"] = [
            {"label": b.label, "count": b.count, "y": b.y, "y0": b.y0, "y1": b.y1}
            for b in ax.clusters
        ]
    return d


def _pair_to_dict(pair: PairLayout) -> dict[str, Any]:
    return {
        "left": pair.left,
        "right": pair.right,
        "total": pair.total,
        "bundles": [
            {
                "left_cluster": arc.bundle.left_cluster,
                "right_cluster": arc.bundle.right_cluster,
                "count": arc.bundle.count,
                "density": arc.bundle.density,
                "width": arc.bundle.width,
                "anomaly": arc.bundle.anomaly,
                "path": {
                    "x0": arc.path.x0,
                    "y0": arc.path.y0,
                    "cx1": arc.path.cx1,
                    "cy1": arc.path.cy1,
                    "cx2": arc.path.cx2,
                    "cy2": arc.path.cy2,
                    "x1": arc.path.x1,
                    "y1": arc.path.y1,
                },
            }
            for arc in pair.bundles
        ],
    }


def layout_to_dict(layout: BundleLayout) -> dict[str, Any]:
    return {
        "dataset_id": layout.dataset_id,
        "frame": frame_to_dict(layout.frame),
        "w_max": layout.w_max,
        "anomaly_threshold": layout.anomaly_threshold,
        "curve_tension": layout.curve_tension,
        "kept_rows": layout.kept_rows,
        "dropped_rows": layout.dropped_rows,
        "axes": [_axis_to_dict(ax) for ax in layout.axes],
        "pairs": [_pair_to_dict(p) for p in layout.pairs],
    }


def layout_to_json(layout: BundleLayout) -> str:
    return json.dumps(layout_to_dict(layout), separators=(",", ":"), allow_nan=False)


def dataset_to_dict(ds: Dataset) -> dict[str, Any]:
    cols: list[dict[str, Any]] = []
    for c in ds.columns:
        if c.kind is Kind.NUMERIC:
            cols.append({"name": c.name, "kind": c.kind.value, "min": c.vmin, "max": c.vmax})
        else:
            cols.append({"name": c.name, "kind": c.kind.value, "categories": list(c.categories)})
    return {
        "dataset_id": ds.id,
        "name": ds.name,
        "row_count": ds.row_count,
        "columns": cols,
    }
