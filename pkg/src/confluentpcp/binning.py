"""Per-axis clustering: closed-form uniform partitions, assignment, boundary edits.

The uniform partition of [lo, hi] into k clusters solves the tiling system
R = (hi - lo) / (2k), centers lo + R * (1 + 2j), directly; no optimisation
pass is needed, so setup cost does not depend on the data at all.
"""

from __future__ import annotations

import numpy as np

from .model import (
    BOUNDARY_RTOL,
    EDIT_GAP_RTOL,
    MISSING,
    BoundaryCollision,
    Cluster,
    ClusterConfig,
    Column,
    InvalidK,
    Kind,
    LastCluster,
    LengthMismatch,
    NonNumericAxis,
    NotInterior,
    OnExistingBoundary,
    UnknownCategory,
    ValueOutOfRange,
)

__all__ = [
    "uniform_clusters",
    "uniform_config",
    "default_config",
    "assign",
    "assign_sorted",
    "assign_uniform",
    "counts_for",
    "move_boundary",
    "split_cluster",
    "merge_at_boundary",
]


def uniform_clusters(lo: float, hi: float, k: int) -> tuple[tuple[Cluster, ...], tuple[float, ...]]:
    """Equal-radius clusters tiling [lo, hi], with their boundary sequence.

    All radii equal R = (hi - lo) / (2k) and centers sit at lo + R * (1 + 2j),
    the unique solution once the tiling constraints are taken with equality.
    Boundaries are computed as lo + j * (hi - lo) / k with the endpoints forced
    exactly to lo and hi.  A degenerate range collapses to one zero-width
    cluster regardless of k.
    """
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
        raise InvalidK(f"cluster count must be a positive integer, got {k!r}")
    lo, hi = float(lo), float(hi)
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
        raise ValueOutOfRange(f"invalid range [{lo}, {hi}]")
    if lo == hi:
        return (Cluster(lo, 0.0),), (lo, hi)
    span = hi - lo
    r = span / (2.0 * k)
    clusters = tuple(Cluster(lo + r * (1 + 2 * j), r) for j in range(k))
    bounds = [lo + j * span / k for j in range(k + 1)]
    bounds[0], bounds[-1] = lo, hi
    return clusters, tuple(bounds)


def uniform_config(axis: str, lo: float, hi: float, k: int) -> ClusterConfig:
    _, bounds = uniform_clusters(lo, hi, k)
    return ClusterConfig(axis, Kind.NUMERIC, boundaries=bounds, uniform=True)


def default_config(column: Column, k: int = 3) -> ClusterConfig:
    """Uniform numeric config over the column range; one band per category otherwise."""
    if column.kind is Kind.NUMERIC:
        return uniform_config(column.name, column.vmin, column.vmax, k)
    return ClusterConfig(column.name, Kind.CATEGORICAL, categories=column.categories)


def _assign_categorical(config: ClusterConfig, column: Column) -> np.ndarray:
    if tuple(column.categories) == config.categories:
        return column.values.astype(np.int64, copy=True)
    # config may carry a reordered or stale category list; remap by name
    try:
        perm = np.array([config.categories.index(c) for c in column.categories], dtype=np.int64)
    except ValueError as e:
        raise UnknownCategory(f"axis {column.name!r}: {e}") from None
    out = np.full(len(column), MISSING, dtype=np.int64)
    ok = column.values >= 0
    out[ok] = perm[column.values[ok]]
    return out


def assign(config: ClusterConfig, column: Column) -> np.ndarray:
    """Cluster index per row (int64), MISSING (-1) where the value is absent.

    Numeric intervals are half-open [b_j, b_{j+1}) with the last one closed, so
    v == hi lands in cluster k - 1.  Values outside the boundary range beyond a
    BOUNDARY_RTOL-of-range slack raise ValueOutOfRange: that means cached
    column stats and the config no longer agree.
    """
    if config.kind is Kind.CATEGORICAL:
        if column.kind is not Kind.CATEGORICAL:
            raise NonNumericAxis(f"axis {column.name!r}: numeric column, categorical config")
        return _assign_categorical(config, column)
    if column.kind is not Kind.NUMERIC:
        raise NonNumericAxis(f"axis {column.name!r} is categorical")
    if config.uniform:
        b = config.boundaries
        return assign_uniform(b[0], b[-1], config.k, column.values)
    return assign_sorted(config.boundaries, column.values)


def assign_sorted(boundaries, values: np.ndarray) -> np.ndarray:
    """Binary-search assignment against an explicit boundary sequence."""
    b = np.asarray(boundaries, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    out = np.full(v.shape, MISSING, dtype=np.int64)
    ok = np.isfinite(v)
    lo, hi = b[0], b[-1]
    if lo == hi:
        bad = ok & (v != lo)
        if bad.any():
            raise ValueOutOfRange(f"values outside degenerate range [{lo}, {hi}]")
        out[ok] = 0
        return out
    tol = BOUNDARY_RTOL * (hi - lo)
    if ok.any():
        vv = v[ok]
        if (vv < lo - tol).any() or (vv > hi + tol).any():
            raise ValueOutOfRange(f"values outside [{lo}, {hi}]")
        idx = np.searchsorted(b[1:-1], vv, side="right")
        out[ok] = idx
    return out


def assign_uniform(lo: float, hi: float, k: int, values: np.ndarray) -> np.ndarray:
    """Arithmetic assignment for uniform partitions; no boundary array, no search.

    Computes floor((v - lo) * k / span) then repairs the rare off-by-one cells
    where float rounding disagrees with the boundary grid, so the result is
    bit-identical to ``assign`` on ``uniform_clusters`` boundaries.
    """
    v = np.asarray(values, dtype=np.float64)
    out = np.full(v.shape, MISSING, dtype=np.int64)
    ok = np.isfinite(v)
    if lo == hi:
        bad = ok & (v != lo)
        if bad.any():
            raise ValueOutOfRange(f"values outside degenerate range [{lo}, {hi}]")
        out[ok] = 0
        return out
    span = hi - lo
    tol = BOUNDARY_RTOL * span
    vv = v[ok]
    if vv.size == 0:
        return out
    if (vv < lo - tol).any() or (vv > hi + tol).any():
        raise ValueOutOfRange(f"values outside [{lo}, {hi}]")
    idx = np.floor((vv - lo) * (k / span)).astype(np.int64)
    np.clip(idx, 0, k - 1, out=idx)
    # repair against the exact grid b_j = lo + j * span / k; the expression
    # must match the boundary builder operation-for-operation, otherwise the
    # two assignment paths can disagree on values sitting on a boundary
    bnd = lo + idx * span / k
    idx[(vv < bnd) & (idx > 0)] -= 1
    bnd_next = lo + (idx + 1) * span / k
    idx[(idx < k - 1) & (vv >= bnd_next)] += 1
    out[ok] = idx
    return out


# ---------------------------------------------------------------------------
# interactive boundary edits
#
# All three return a new ClusterConfig; the input is never modified.  Edits
# apply to numeric axes only and keep the endpoint boundaries fixed.

def _require_numeric(config: ClusterConfig) -> None:
    if config.kind is not Kind.NUMERIC:
        raise NonNumericAxis(f"axis {config.axis!r}: boundary edits apply to numeric axes")


def _check_interior(config: ClusterConfig, boundary_index: int) -> None:
    if not 0 < boundary_index < len(config.boundaries) - 1:
        raise NotInterior(
            f"axis {config.axis!r}: boundary {boundary_index} is not interior (k={config.k})"
        )


def move_boundary(config: ClusterConfig, boundary_index: int, value: float) -> ClusterConfig:
    """Move one interior boundary, merging/splitting mass between its two clusters.

    The new position must stay a minimum gap (EDIT_GAP_RTOL of the range) away
    from both neighbours; landing on or past one raises BoundaryCollision.
    Moving to the current position is a no-op returning the config unchanged.
    """
    _require_numeric(config)
    _check_interior(config, boundary_index)
    b = config.boundaries
    if not np.isfinite(value):
        raise BoundaryCollision(f"axis {config.axis!r}: boundary value must be finite")
    if value == b[boundary_index]:
        return config
    gap = EDIT_GAP_RTOL * (b[-1] - b[0])
    left, right = b[boundary_index - 1], b[boundary_index + 1]
    if value <= left + gap or value >= right - gap:
        raise BoundaryCollision(
            f"axis {config.axis!r}: {value} collides with neighbours ({left}, {right})"
        )
    nb = b[:boundary_index] + (float(value),) + b[boundary_index + 1:]
    return ClusterConfig(config.axis, Kind.NUMERIC, boundaries=nb, uniform=False)


def split_cluster(config: ClusterConfig, position: float) -> ClusterConfig:
    """Insert a boundary at ``position``, splitting the cluster containing it."""
    _require_numeric(config)
    b = config.boundaries
    lo, hi = b[0], b[-1]
    if not np.isfinite(position) or not (lo < position < hi):
        if position in (lo, hi):
            raise OnExistingBoundary(f"axis {config.axis!r}: {position} is an endpoint boundary")
        raise BoundaryCollision(f"axis {config.axis!r}: split position {position} outside ({lo}, {hi})")
    gap = EDIT_GAP_RTOL * (hi - lo)
    for x in b:
        if abs(position - x) <= gap:
            raise OnExistingBoundary(f"axis {config.axis!r}: {position} coincides with boundary {x}")
    j = int(np.searchsorted(np.asarray(b), position))
    nb = b[:j] + (float(position),) + b[j:]
    return ClusterConfig(config.axis, Kind.NUMERIC, boundaries=nb, uniform=False)


def merge_at_boundary(config: ClusterConfig, boundary_index: int) -> ClusterConfig:
    """Remove one interior boundary, merging the clusters on either side."""
    _require_numeric(config)
    if config.k <= 1:
        raise LastCluster(f"axis {config.axis!r}: a single cluster cannot be merged")
    _check_interior(config, boundary_index)
    b = config.boundaries
    nb = b[:boundary_index] + b[boundary_index + 1:]
    return ClusterConfig(config.axis, Kind.NUMERIC, boundaries=nb, uniform=False)


def counts_for(assignments: np.ndarray, k: int) -> np.ndarray:
    """Rows per cluster (missing rows excluded)."""
    a = assignments[assignments >= 0]
    return np.bincount(a, minlength=k).astype(np.int64)


def check_aligned(*arrays: np.ndarray) -> None:
    n = {a.shape[0] for a in arrays}
    if len(n) > 1:
        raise LengthMismatch(f"row-aligned arrays differ in length: {sorted(n)}")
