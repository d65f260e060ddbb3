"""HTTP service: dataset uploads, view creation, live cluster editing.

Datasets are immutable after upload; all mutable analysis state lives in
views.  Each view carries a monotonically increasing version and a lock, so
edits serialize per view and a PATCH citing a stale version gets a 409 with
the current one.  Assignment vectors, keep masks, per-cluster counts, and
pair matrices are cached by content keys (dataset id + config identity), which
is what makes an edit recompute only the axis it touched.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict

from . import binning
from .bundling import ViewAggregates, count_pairs
from .geometry import compose_layout, render_svg
from .ingest import IngestOptions, parse_table
from .model import (
    ClusterConfig,
    Dataset,
    EmptyFile,
    EngineError,
    FileTooLarge,
    Kind,
    PlotFrame,
    UnknownDataset,
    UnknownView,
    VersionConflict,
    ViewState,
    validate_config,
)
from .serialize import dataset_to_dict, layout_to_dict

DEFAULT_MAX_UPLOAD = 64 * 1024 * 1024


class InvalidPatchArgs(EngineError):
    """PATCH args are missing a field or carry the wrong type."""


class _LRU:
    """Tiny thread-safe LRU used for all engine caches."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._d: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key not in self._d:
                return None
            self._d.move_to_end(key)
            return self._d[key]

    def put(self, key, value):
        with self._lock:
            self._d[key] = value
            self._d.move_to_end(key)
            while len(self._d) > self.capacity:
                self._d.popitem(last=False)

    def __len__(self):
        with self._lock:
            return len(self._d)


@dataclass
class ViewRecord:
    view_id: str
    state: ViewState
    version: int = 1
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory datasets, views, and the derived-result caches.

    Cache capacities are entry counts; assignment vectors are the big ones
    (8 bytes per row each), so that cache is kept small.
    """

    def __init__(self, assign_entries: int = 64, pair_entries: int = 512):
        self.datasets: dict[str, Dataset] = {}
        self.views: dict[str, ViewRecord] = {}
        self._lock = threading.Lock()
        self.assign_cache = _LRU(assign_entries)
        self.keep_cache = _LRU(16)
        self.counts_cache = _LRU(256)
        self.pair_cache = _LRU(pair_entries)

    def add_dataset(self, ds: Dataset) -> Dataset:
        with self._lock:
            return self.datasets.setdefault(ds.id, ds)

    def dataset(self, dataset_id: str) -> Dataset:
        try:
            return self.datasets[dataset_id]
        except KeyError:
            raise UnknownDataset(f"no dataset {dataset_id!r}") from None

    def add_view(self, state: ViewState, view_id: str | None = None, version: int = 1) -> ViewRecord:
        rec = ViewRecord(view_id or "v-" + uuid.uuid4().hex[:12], state, version)
        with self._lock:
            self.views[rec.view_id] = rec
        return rec

    def view(self, view_id: str) -> ViewRecord:
        try:
            return self.views[view_id]
        except KeyError:
            raise UnknownView(f"no view {view_id!r}") from None


# ---------------------------------------------------------------------------
# cached aggregation

def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def cached_assignments(store: SessionStore, ds: Dataset, view: ViewState) -> dict[str, np.ndarray]:
    out = {}
    for axis in view.axis_order:
        cfg = view.config(axis)
        key = (ds.id,) + cfg.key()
        vec = store.assign_cache.get(key)
        if vec is None:
            vec = _frozen(binning.assign(cfg, ds.column(axis)))
            store.assign_cache.put(key, vec)
        out[axis] = vec
    return out


def cached_aggregate(store: SessionStore, ds: Dataset, view: ViewState) -> ViewAggregates:
    """Equivalent to bundling.aggregate, but every intermediate is memoized.

    The keep mask depends only on which axes are displayed (missingness is a
    column property, not a config property), so boundary edits reuse it; pair
    matrices are keyed by both configs and looked up transposed as well, so an
    axis reorder is served entirely from cache.
    """
    vecs = cached_assignments(store, ds, view)
    shown = frozenset(view.axis_order)
    kkey = (ds.id, shown)
    keep = store.keep_cache.get(kkey)
    if keep is None:
        keep = np.ones(ds.row_count, dtype=bool)
        for axis in view.axis_order:
            keep &= vecs[axis] >= 0
        keep = _frozen(keep)
        store.keep_cache.put(kkey, keep)
    kept = int(keep.sum())

    axis_counts = {}
    for axis in view.axis_order:
        cfg = view.config(axis)
        ckey = (ds.id, shown) + cfg.key()
        counts = store.counts_cache.get(ckey)
        if counts is None:
            counts = _frozen(np.bincount(vecs[axis][keep], minlength=cfg.k).astype(np.int64))
            store.counts_cache.put(ckey, counts)
        axis_counts[axis] = counts

    pair_counts = {}
    for a, b in view.adjacent_pairs:
        ka, kb = view.config(a).key(), view.config(b).key()
        pkey = (ds.id, shown, ka, kb)
        m = store.pair_cache.get(pkey)
        if m is None:
            mt = store.pair_cache.get((ds.id, shown, kb, ka))
            if mt is not None:
                m = _frozen(np.ascontiguousarray(mt.T))
            else:
                m = _frozen(
                    count_pairs(vecs[a], vecs[b], keep, view.config(a).k, view.config(b).k)
                )
            store.pair_cache.put(pkey, m)
        pair_counts[(a, b)] = m
    return ViewAggregates(axis_counts, pair_counts, kept, ds.row_count - kept)


def layout_for(store: SessionStore, view: ViewState):
    ds = store.dataset(view.dataset_id)
    return compose_layout(ds, view, cached_aggregate(store, ds, view))


# ---------------------------------------------------------------------------
# request bodies

class PlotSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    width: float = 960.0
    height: float = 540.0
    margin_top: float = 42.0
    margin_right: float = 60.0
    margin_bottom: float = 24.0
    margin_left: float = 60.0

    def to_frame(self) -> PlotFrame:
        return PlotFrame(
            self.width, self.height,
            self.margin_top, self.margin_right, self.margin_bottom, self.margin_left,
        )


class CreateViewBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    axes: list[str] | None = None
    bins: int | dict[str, int] = 3
    boundaries: dict[str, list[float]] = {}
    w_max: float = 40.0
    anomaly_threshold: float = 0.005
    curve_tension: float = 1.0
    plot: PlotSpec | None = None


class PatchViewBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    version: int
    op: Literal["reorder_axes", "move_boundary", "split_cluster", "merge_at_boundary"]
    args: dict[str, Any] = {}


def build_view(ds: Dataset, body: CreateViewBody) -> ViewState:
    axes = tuple(body.axes) if body.axes is not None else ds.column_names
    default_k = body.bins if isinstance(body.bins, int) else 3
    per_axis = body.bins if isinstance(body.bins, dict) else {}
    configs = {}
    for a in axes:
        col = ds.column(a)
        if a in body.boundaries:
            cfg = ClusterConfig(a, Kind.NUMERIC, boundaries=tuple(float(v) for v in body.boundaries[a]))
            validate_config(cfg, col)
            configs[a] = cfg
        else:
            configs[a] = binning.default_config(col, int(per_axis.get(a, default_k)))
    return ViewState(
        dataset_id=ds.id,
        axis_order=axes,
        configs=configs,
        w_max=body.w_max,
        anomaly_threshold=body.anomaly_threshold,
        curve_tension=body.curve_tension,
        plot=body.plot.to_frame() if body.plot is not None else PlotFrame(),
    )


def _arg(args: dict, name: str, kind, op: str):
    if name not in args:
        raise InvalidPatchArgs(f"op {op!r} needs arg {name!r}")
    v = args[name]
    if isinstance(v, bool):
        ok = False
    elif kind is int:
        ok = isinstance(v, int) or (isinstance(v, float) and v.is_integer())
    elif kind is float:
        ok = isinstance(v, (int, float))
    else:
        ok = isinstance(v, kind)
    if not ok:
        raise InvalidPatchArgs(f"op {op!r}: arg {name!r} has wrong type ({type(v).__name__})")
    return kind(v) if kind in (int, float) else v


def apply_patch(state: ViewState, op: str, args: dict) -> ViewState:
    if op == "reorder_axes":
        order = _arg(args, "order", list, op)
        if not all(isinstance(x, str) for x in order):
            raise InvalidPatchArgs("reorder_axes: 'order' must be a list of axis names")
        return state.with_axis_order(order)
    axis = _arg(args, "axis", str, op)
    cfg = state.config(axis)
    if op == "move_boundary":
        idx = _arg(args, "boundary_index", int, op)
        value = _arg(args, "value", float, op)
        return state.with_config(axis, binning.move_boundary(cfg, idx, value))
    if op == "split_cluster":
        position = _arg(args, "position", float, op)
        return state.with_config(axis, binning.split_cluster(cfg, position))
    if op == "merge_at_boundary":
        idx = _arg(args, "boundary_index", int, op)
        return state.with_config(axis, binning.merge_at_boundary(cfg, idx))
    raise InvalidPatchArgs(f"unknown op {op!r}")  # unreachable behind the Literal


# ---------------------------------------------------------------------------
# view persistence (optional write-through)

def _config_to_dict(cfg: ClusterConfig) -> dict:
    if cfg.kind is Kind.NUMERIC:
        return {"kind": "numeric", "boundaries": list(cfg.boundaries), "uniform": cfg.uniform}
    return {"kind": "categorical", "categories": list(cfg.categories)}


def _config_from_dict(axis: str, d: dict) -> ClusterConfig:
    if d["kind"] == "numeric":
        return ClusterConfig(
            axis, Kind.NUMERIC, boundaries=tuple(d["boundaries"]), uniform=bool(d.get("uniform"))
        )
    return ClusterConfig(axis, Kind.CATEGORICAL, categories=tuple(d["categories"]))


def save_views(store: SessionStore, path: str) -> None:
    rows = []
    for rec in store.views.values():
        st = rec.state
        rows.append(
            {
                "view_id": rec.view_id,
                "version": rec.version,
                "dataset_id": st.dataset_id,
                "axis_order": list(st.axis_order),
                "configs": {a: _config_to_dict(st.configs[a]) for a in st.axis_order},
                "w_max": st.w_max,
                "anomaly_threshold": st.anomaly_threshold,
                "curve_tension": st.curve_tension,
                "plot": {
                    "width": st.plot.width,
                    "height": st.plot.height,
                    "margin_top": st.plot.margin_top,
                    "margin_right": st.plot.margin_right,
                    "margin_bottom": st.plot.margin_bottom,
                    "margin_left": st.plot.margin_left,
                },
            }
        )
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".", suffix=".tmp")
    with os.fdopen(fd, "w") as f:
        json.dump({"views": rows}, f)
    os.replace(tmp, path)


def load_views(store: SessionStore, path: str) -> int:
    """Restore persisted views whose dataset is present; returns count loaded."""
    if not os.path.exists(path):
        return 0
    with open(path) as f:
        doc = json.load(f)
    loaded = 0
    for row in doc.get("views", []):
        if row["dataset_id"] not in store.datasets:
            continue
        p = row["plot"]
        state = ViewState(
            dataset_id=row["dataset_id"],
            axis_order=tuple(row["axis_order"]),
            configs={a: _config_from_dict(a, c) for a, c in row["configs"].items()},
            w_max=row["w_max"],
            anomaly_threshold=row["anomaly_threshold"],
            curve_tension=row["curve_tension"],
            plot=PlotFrame(
                p["width"], p["height"],
                p["margin_top"], p["margin_right"], p["margin_bottom"], p["margin_left"],
            ),
        )
        store.add_view(state, view_id=row["view_id"], version=row["version"])
        loaded += 1
    return loaded


# ---------------------------------------------------------------------------
# app

async def _read_limited(stream, limit: int) -> bytes:
    chunks, total = [], 0
    async for chunk in stream:
        total += len(chunk)
        if total > limit:
            raise FileTooLarge(f"upload exceeds {limit} bytes")
        chunks.append(chunk)
    return b"".join(chunks)


def create_app(
    store: SessionStore | None = None,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD,
    persist_path: str | None = None,
    ingest_options: IngestOptions | None = None,
) -> FastAPI:
    app = FastAPI(title="confluentpcp")
    st = store if store is not None else SessionStore()
    opts = ingest_options or IngestOptions()
    app.state.store = st
    if persist_path:
        load_views(st, persist_path)

    def _persist():
        if persist_path:
            save_views(st, persist_path)

    @app.exception_handler(EngineError)
    async def _engine_error(request: Request, exc: EngineError):
        content: dict[str, Any] = {"error": exc.name, "detail": str(exc)}
        if isinstance(exc, VersionConflict):
            content["current_version"] = exc.current_version
        return JSONResponse(status_code=exc.http_status, content=content)

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/"):
            form = await request.form()
            upload = form.get("file")
            if upload is None or isinstance(upload, str):
                raise EmptyFile("multipart upload needs a 'file' part")
            data = await upload.read()
            if len(data) > max_upload_bytes:
                raise FileTooLarge(f"upload exceeds {max_upload_bytes} bytes")
            name = upload.filename or "upload"
        else:
            data = await _read_limited(request.stream(), max_upload_bytes)
            name = request.headers.get("x-dataset-name", "upload")
        ds = parse_table(data, opts, name=name)
        ds = st.add_dataset(ds)
        return dataset_to_dict(ds)

    @app.get("/datasets")
    async def list_datasets():
        return [dataset_to_dict(d) for d in st.datasets.values()]

    @app.get("/datasets/{dataset_id}")
    async def get_dataset(dataset_id: str):
        return dataset_to_dict(st.dataset(dataset_id))

    @app.post("/datasets/{dataset_id}/views", status_code=201)
    async def create_view(dataset_id: str, body: CreateViewBody):
        ds = st.dataset(dataset_id)
        state = build_view(ds, body)
        rec = st.add_view(state)
        _persist()
        return {
            "view_id": rec.view_id,
            "version": rec.version,
            "layout": layout_to_dict(layout_for(st, rec.state)),
        }

    @app.get("/views/{view_id}/layout")
    async def get_layout(view_id: str):
        rec = st.view(view_id)
        return {
            "view_id": rec.view_id,
            "version": rec.version,
            **layout_to_dict(layout_for(st, rec.state)),
        }

    @app.get("/views/{view_id}/svg")
    async def get_svg(view_id: str):
        rec = st.view(view_id)
        svg = render_svg(layout_for(st, rec.state))
        return Response(content=svg, media_type="image/svg+xml")

    @app.patch("/views/{view_id}")
    async def patch_view(view_id: str, body: PatchViewBody):
        rec = st.view(view_id)
        with rec.lock:
            if body.version != rec.version:
                raise VersionConflict(
                    f"view is at version {rec.version}, patch cited {body.version}",
                    current_version=rec.version,
                )
            new_state = apply_patch(rec.state, body.op, body.args)
            layout = layout_for(st, new_state)  # only commit states that build
            rec.state = new_state
            rec.version += 1
            _persist()
            return {
                "view_id": rec.view_id,
                "version": rec.version,
                "layout": layout_to_dict(layout),
            }

    return app
