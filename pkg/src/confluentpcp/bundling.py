"""Inter-axis aggregation: pair counts, densities, widths, anomaly flags.

For each adjacent axis pair the n rows collapse into at most k_left * k_right
bundles; everything downstream of the single counting pass is O(k^2) and never
touches the rows again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import binning
from .model import (
    Bundle,
    BundleLayout,
    Dataset,
    InvalidThreshold,
    InvalidWMax,
    LengthMismatch,
    ViewState,
)

__all__ = [
    "count_pairs",
    "densities",
    "widths",
    "flag_anomalies",
    "make_bundles",
    "PairCounts",
    "ViewAggregates",
    "aggregate",
    "build_layout",
]


def count_pairs(
    left: np.ndarray,
    right: np.ndarray,
    keep_mask: np.ndarray,
    k_left: int,
    k_right: int,
) -> np.ndarray:
    """(k_left, k_right) matrix counting kept rows with left cluster i and right j.

    keep_mask marks rows with no missing value on any displayed axis, so every
    pair of a view normalises over the same row population.  One fused bincount
    over the flattened pair code i * k_right + j; a single pass over n
    regardless of the cluster counts.
    """
    if not (left.shape == right.shape == keep_mask.shape):
        raise LengthMismatch(
            f"row-aligned inputs differ: {left.shape[0]}, {right.shape[0]}, {keep_mask.shape[0]}"
        )
    code = left[keep_mask] * k_right + right[keep_mask]
    flat = np.bincount(code, minlength=k_left * k_right)
    return flat.reshape(k_left, k_right).astype(np.int64)


def count_pairs_chunked(
    left: np.ndarray,
    right: np.ndarray,
    keep_mask: np.ndarray,
    k_left: int,
    k_right: int,
    chunks: int = 4,
) -> np.ndarray:
    """Same result as count_pairs, summed over row chunks.

    Integer addition is associative and commutative, so any chunking (and any
    execution order over the chunks) reproduces the sequential matrix exactly.
    """
    n = left.shape[0]
    if chunks <= 1 or n < chunks:
        return count_pairs(left, right, keep_mask, k_left, k_right)
    step = -(-n // chunks)
    total = np.zeros((k_left, k_right), dtype=np.int64)
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        total += count_pairs(left[lo:hi], right[lo:hi], keep_mask[lo:hi], k_left, k_right)
    return total


def densities(counts: np.ndarray) -> np.ndarray:
    """Counts normalised by the pair total, so densities over a pair sum to 1.

    A pair with zero kept rows yields all-zero densities rather than NaN.
    """
    total = counts.sum()
    if total == 0:
        return np.zeros(counts.shape, dtype=np.float64)
    return counts / float(total)


def widths(density: np.ndarray, w_max: float) -> np.ndarray:
    """Stroke widths W = D * w_max, element-wise."""
    if not np.isfinite(w_max) or w_max <= 0:
        raise InvalidWMax(f"w_max must be positive, got {w_max}")
    return np.asarray(density, dtype=np.float64) * w_max


def flag_anomalies(density: np.ndarray, threshold: float) -> np.ndarray:
    """Boolean mask of bundles that exist but fall below the density threshold."""
    if not (0.0 < threshold < 1.0):
        raise InvalidThreshold(f"anomaly threshold must be in (0, 1), got {threshold}")
    d = np.asarray(density)
    return (d > 0.0) & (d < threshold)


def make_bundles(counts: np.ndarray, w_max: float, anomaly_threshold: float) -> tuple[Bundle, ...]:
    """Bundles for one pair, widest first (draw order: heavy strokes underneath).

    Zero-count cells produce no bundle; ties broken by (i, j) for determinism.
    """
    dens = densities(counts)
    wid = widths(dens, w_max)
    anom = flag_anomalies(dens, anomaly_threshold)
    ii, jj = np.nonzero(counts)
    order = np.lexsort((jj, ii, -dens[ii, jj]))
    return tuple(
        Bundle(
            left_cluster=int(ii[t]),
            right_cluster=int(jj[t]),
            count=int(counts[ii[t], jj[t]]),
            density=float(dens[ii[t], jj[t]]),
            width=float(wid[ii[t], jj[t]]),
            anomaly=bool(anom[ii[t], jj[t]]),
        )
        for t in order
    )


@dataclass(frozen=True)
class PairCounts:
    """Counting result for one adjacent pair; transposable so a cached matrix
    survives an axis-order flip."""

    left_axis: str
    right_axis: str
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def transposed(self) -> "PairCounts":
        return PairCounts(self.right_axis, self.left_axis, np.ascontiguousarray(self.counts.T))


@dataclass(frozen=True)
class ViewAggregates:
    """Everything the O(n) pass produces; the layout is derived from this alone.

    axis_counts maps axis name to its (k,) per-cluster row counts over kept
    rows; pair_counts maps (left, right) to the count matrix.  Total size is
    O(sum k_i * k_{i+1}), independent of the row count.
    """

    axis_counts: Mapping[str, np.ndarray]
    pair_counts: Mapping[tuple[str, str], np.ndarray]
    kept_rows: int
    dropped_rows: int


def aggregate(dataset: Dataset, view: ViewState, assignments: Mapping[str, np.ndarray] | None = None) -> ViewAggregates:
    """Run the row-touching phase: assign each displayed axis, build the shared
    keep mask, count every adjacent pair.

    ``assignments`` lets a caller (the service cache) supply per-axis vectors it
    already has; missing axes are computed here.
    """
    vecs: dict[str, np.ndarray] = {}
    for axis in view.axis_order:
        if assignments is not None and axis in assignments:
            vecs[axis] = assignments[axis]
        else:
            vecs[axis] = binning.assign(view.config(axis), dataset.column(axis))
    n = dataset.row_count
    keep = np.ones(n, dtype=bool)
    for axis in view.axis_order:
        keep &= vecs[axis] >= 0
    kept = int(keep.sum())
    axis_counts = {
        axis: np.bincount(vecs[axis][keep], minlength=view.config(axis).k).astype(np.int64)
        for axis in view.axis_order
    }
    pair_counts = {
        (a, b): count_pairs(vecs[a], vecs[b], keep, view.config(a).k, view.config(b).k)
        for a, b in view.adjacent_pairs
    }
    return ViewAggregates(axis_counts, pair_counts, kept, n - kept)


def build_layout(view: ViewState, dataset: Dataset) -> BundleLayout:
    """Full pipeline for one view: assign, count, then hand off to geometry.

    Output size is bounded by the cluster counts, never by the row count.
    """
    from . import geometry  # geometry composes on top of this module

    return geometry.compose_layout(dataset, view, aggregate(dataset, view))
