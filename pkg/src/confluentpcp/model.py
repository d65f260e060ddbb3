"""Shared domain model: column tables, per-axis cluster configs, bundles, view state.

Everything here is immutable after construction (arrays are frozen), so values
can be shared freely between threads; edits always produce new objects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

# Tolerance for boundary endpoint checks, relative to the axis range.
BOUNDARY_RTOL = 1e-9
# Minimum relative gap enforced between boundaries by interactive edits.
EDIT_GAP_RTOL = 1e-6
# Assignment code for missing / dropped values.
MISSING = -1


# ---------------------------------------------------------------------------
# errors

class EngineError(Exception):
    """Base error; ``name`` is the stable identifier used on the wire."""

    http_status = 422

    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        msg = super().__str__()
        return msg if msg else self.name


class NonMonotonicBoundaries(EngineError):
    """Boundary sequence is not strictly increasing."""


class BoundaryOutOfRange(EngineError):
    """Boundary endpoints do not match the column range."""


class EmptyConfig(EngineError):
    """Cluster config has no clusters."""


class InvalidK(EngineError):
    """Requested cluster count is not a positive integer."""


class ValueOutOfRange(EngineError):
    """A value lies outside the configured axis range (stale stats)."""


class UnknownCategory(EngineError):
    """A categorical value is not in the column's category list."""


class BoundaryCollision(EngineError):
    """A moved boundary would touch or cross a neighbouring boundary."""


class NotInterior(EngineError):
    """The operation needs an interior boundary, not an endpoint."""


class OnExistingBoundary(EngineError):
    """A split position coincides with an existing boundary."""


class LastCluster(EngineError):
    """Cannot merge: the axis has a single cluster left."""


class NonNumericAxis(EngineError):
    """Boundary operations only apply to numeric axes."""


class LengthMismatch(EngineError):
    """Row-aligned sequences have different lengths."""


class InvalidWMax(EngineError):
    """Maximum bundle width must be a positive, finite number."""


class InvalidThreshold(EngineError):
    """Anomaly threshold must lie strictly between 0 and 1."""


class InvalidTension(EngineError):
    """Curve tension must lie in (0, 1]."""


class DegenerateSpan(EngineError):
    """Bundle endpoints must have increasing x positions."""


class UnknownAxis(EngineError):
    """Named axis does not exist in the dataset."""


class InvalidAxisOrder(EngineError):
    """Axis order is not a permutation of the view's axes."""


class RaggedRow(EngineError):
    """A CSV row has a different field count than the header."""

    http_status = 400


class EmptyFile(EngineError):
    """The input contains no rows at all."""

    http_status = 400


class TooManyCategories(EngineError):
    """A non-numeric column exceeds the configured category limit."""

    http_status = 400


class FileTooLarge(EngineError):
    """Input exceeds the configured size limit."""

    http_status = 413


class UnknownDataset(EngineError):
    http_status = 404


class UnknownView(EngineError):
    http_status = 404


class VersionConflict(EngineError):
    """The edit cited a stale view version."""

    http_status = 409

    def __init__(self, msg: str = "", current_version: int = 0):
        super().__init__(msg)
        self.current_version = current_version


# ---------------------------------------------------------------------------
# columns and datasets

class Kind(str, enum.Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Column:
    """One column of a dataset.

    Numeric columns store float64 values with NaN as the missing marker and
    cache (vmin, vmax) over the non-missing values.  Categorical columns store
    int32 codes (-1 missing) plus the category list in first-appearance order.
    """

    name: str
    kind: Kind
    values: np.ndarray
    vmin: float | None = None
    vmax: float | None = None
    categories: tuple[str, ...] = ()

    @staticmethod
    def numeric(name: str, values: Iterable[float]) -> "Column":
        arr = np.asarray(values, dtype=np.float64)
        finite = arr[np.isfinite(arr)]
        if finite.size:
            vmin, vmax = float(finite.min()), float(finite.max())
        else:
            vmin = vmax = 0.0  # empty or all-missing: degenerate range
        return Column(name, Kind.NUMERIC, _frozen(arr), vmin, vmax)

    @staticmethod
    def categorical(name: str, codes: Iterable[int], categories: Sequence[str]) -> "Column":
        cats = tuple(categories)
        if len(set(cats)) != len(cats):
            raise ValueError(f"duplicate categories in column {name!r}")
        arr = np.asarray(codes, dtype=np.int32)
        return Column(name, Kind.CATEGORICAL, _frozen(arr), categories=cats)

    @staticmethod
    def from_strings(name: str, raw: Sequence[str | None]) -> "Column":
        """Build a categorical column from raw strings (None = missing)."""
        cats: list[str] = []
        index: dict[str, int] = {}
        codes = np.empty(len(raw), dtype=np.int32)
        for i, v in enumerate(raw):
            if v is None:
                codes[i] = MISSING
            else:
                j = index.get(v)
                if j is None:
                    j = index[v] = len(cats)
                    cats.append(v)
                codes[i] = j
        return Column.categorical(name, codes, cats)

    def __post_init__(self):
        if self.kind is Kind.NUMERIC:
            if self.vmin is None or self.vmax is None:
                raise ValueError(f"numeric column {self.name!r} is missing range stats")
            if self.vmin > self.vmax:
                raise ValueError(f"column {self.name!r}: vmin > vmax")

    @property
    def missing_mask(self) -> np.ndarray:
        if self.kind is Kind.NUMERIC:
            return ~np.isfinite(self.values)
        return self.values < 0

    def __len__(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class Dataset:
    """Immutable column-oriented table with per-column schema and cached stats."""

    id: str
    name: str
    columns: tuple[Column, ...]
    row_count: int

    @staticmethod
    def build(id: str, name: str, columns: Sequence[Column]) -> "Dataset":
        cols = tuple(columns)
        n = len(cols[0]) if cols else 0
        return Dataset(id, name, cols, n)

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names")
        for c in self.columns:
            if len(c) != self.row_count:
                raise ValueError(f"column {c.name!r} has {len(c)} values, expected {self.row_count}")

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise UnknownAxis(f"no column named {name!r}")

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def numeric_columns(self) -> tuple[Column, ...]:
        return tuple(c for c in self.columns if c.kind is Kind.NUMERIC)


# ---------------------------------------------------------------------------
# clusters and per-axis configs

@dataclass(frozen=True)
class Cluster:
    """An axis interval described by center C and radius R, plus its row count."""

    center: float
    radius: float
    count: int = 0

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("cluster radius must be >= 0")


@dataclass(frozen=True)
class ClusterConfig:
    """Ordered partition of one axis into clusters.

    Numeric axes are described by a boundary sequence b_0 < ... < b_k covering
    [vmin, vmax]; clusters tile the range, with center (b_j + b_{j+1}) / 2 and
    radius (b_{j+1} - b_j) / 2.  Categorical axes get one cluster per category
    and carry no editable boundaries.
    """

    axis: str
    kind: Kind
    boundaries: tuple[float, ...] = ()
    categories: tuple[str, ...] = ()
    uniform: bool = False

    def __post_init__(self):
        if self.kind is Kind.NUMERIC:
            object.__setattr__(self, "boundaries", tuple(float(v) for v in self.boundaries))
            b = self.boundaries
            if len(b) < 2:
                raise EmptyConfig(f"axis {self.axis!r}: need at least one cluster")
            degenerate = len(b) == 2 and b[0] == b[1]
            if not degenerate and any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
                raise NonMonotonicBoundaries(f"axis {self.axis!r}: boundaries must strictly increase")
        else:
            if not self.categories:
                raise EmptyConfig(f"axis {self.axis!r}: need at least one category")

    @property
    def k(self) -> int:
        if self.kind is Kind.NUMERIC:
            return len(self.boundaries) - 1
        return len(self.categories)

    def centers(self) -> tuple[float, ...]:
        if self.kind is Kind.NUMERIC:
            b = self.boundaries
            return tuple((b[j] + b[j + 1]) / 2.0 for j in range(self.k))
        # categorical clusters live in band-index space [0, k]
        return tuple(j + 0.5 for j in range(self.k))

    def radii(self) -> tuple[float, ...]:
        if self.kind is Kind.NUMERIC:
            b = self.boundaries
            return tuple((b[j + 1] - b[j]) / 2.0 for j in range(self.k))
        return tuple(0.5 for _ in range(self.k))

    def clusters(self, counts: Sequence[int] | None = None) -> tuple[Cluster, ...]:
        cs, rs = self.centers(), self.radii()
        ns = counts if counts is not None else [0] * self.k
        return tuple(Cluster(c, r, int(n)) for c, r, n in zip(cs, rs, ns))

    def key(self) -> tuple:
        """Hashable identity used by the assignment / pair-count caches."""
        if self.kind is Kind.NUMERIC:
            return (self.axis, "n", self.boundaries)
        return (self.axis, "c", self.categories)


def validate_config(config: ClusterConfig, column: Column) -> tuple[Cluster, ...]:
    """Check a numeric config against its column and return the derived clusters.

    Boundaries must strictly increase and the endpoints must equal the column
    range within ``BOUNDARY_RTOL`` of the range.
    """
    if column.kind is not Kind.NUMERIC:
        raise NonNumericAxis(f"axis {column.name!r} is categorical")
    if config.kind is not Kind.NUMERIC or len(config.boundaries) < 2:
        raise EmptyConfig(f"axis {column.name!r}: boundary config required")
    b = config.boundaries
    lo, hi = column.vmin, column.vmax
    tol = BOUNDARY_RTOL * (hi - lo)
    degenerate = hi == lo
    if degenerate:
        if len(b) != 2 or abs(b[0] - lo) > 0 or abs(b[1] - hi) > 0:
            raise BoundaryOutOfRange(f"axis {column.name!r}: degenerate range admits a single zero-width cluster")
        return config.clusters()
    if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
        raise NonMonotonicBoundaries(f"axis {column.name!r}: boundaries must strictly increase")
    if abs(b[0] - lo) > tol or abs(b[-1] - hi) > tol:
        raise BoundaryOutOfRange(
            f"axis {column.name!r}: boundaries [{b[0]}, {b[-1]}] do not cover [{lo}, {hi}]"
        )
    return config.clusters()


# ---------------------------------------------------------------------------
# bundles and layouts

@dataclass(frozen=True)
class Bundle:
    """One merged link between a cluster on the left axis and one on the right."""

    left_cluster: int
    right_cluster: int
    count: int
    density: float
    width: float
    anomaly: bool


@dataclass(frozen=True)
class BezierPath:
    """Cubic Bezier with horizontal tangents at both endpoints (C1 across axes)."""

    x0: float
    y0: float
    cx1: float
    cy1: float
    cx2: float
    cy2: float
    x1: float
    y1: float
    stroke_width: float
    dashed: bool


@dataclass(frozen=True)
class BundleArc:
    bundle: Bundle
    path: BezierPath


@dataclass(frozen=True)
class ClusterBand:
    """Pixel extent of one cluster on an axis; numeric clusters carry center/radius."""

    count: int
    y: float
    y0: float
    y1: float
    center: float | None = None
    radius: float | None = None
    label: str | None = None


@dataclass(frozen=True)
class AxisLayout:
    name: str
    kind: Kind
    x: float
    lo: float | None
    hi: float | None
    categories: tuple[str, ...]
    boundaries: tuple[float, ...]
    boundary_y: tuple[float, ...]
    clusters: tuple[ClusterBand, ...]


@dataclass(frozen=True)
class PairLayout:
    left: str
    right: str
    total: int
    bundles: tuple[BundleArc, ...]


@dataclass(frozen=True)
class PlotFrame:
    """Pixel frame of the plot; axes are evenly spaced across the inner width."""

    width: float = 960.0
    height: float = 540.0
    margin_top: float = 42.0
    margin_right: float = 60.0
    margin_bottom: float = 24.0
    margin_left: float = 60.0

    def __post_init__(self):
        if self.inner_width <= 0 or self.inner_height <= 0:
            raise ValueError("plot frame has non-positive inner area")

    @property
    def inner_width(self) -> float:
        return self.width - self.margin_left - self.margin_right

    @property
    def inner_height(self) -> float:
        return self.height - self.margin_top - self.margin_bottom

    def axis_x(self, index: int, n_axes: int) -> float:
        if n_axes <= 1:
            return self.margin_left + self.inner_width / 2.0
        return self.margin_left + self.inner_width * index / (n_axes - 1)


@dataclass(frozen=True)
class BundleLayout:
    """The full renderable document; its size depends on cluster counts, not rows."""

    dataset_id: str
    frame: PlotFrame
    w_max: float
    anomaly_threshold: float
    curve_tension: float
    axes: tuple[AxisLayout, ...]
    pairs: tuple[PairLayout, ...]
    kept_rows: int
    dropped_rows: int


# ---------------------------------------------------------------------------
# view state

@dataclass(frozen=True)
class ViewState:
    """Mutable analysis configuration, edited by producing new values."""

    dataset_id: str
    axis_order: tuple[str, ...]
    configs: Mapping[str, ClusterConfig]
    w_max: float = 40.0
    anomaly_threshold: float = 0.005
    curve_tension: float = 1.0
    plot: PlotFrame = field(default_factory=PlotFrame)

    def __post_init__(self):
        if not self.axis_order:
            raise EmptyConfig("view needs at least one axis")
        if len(set(self.axis_order)) != len(self.axis_order):
            raise InvalidAxisOrder("duplicate axis in axis order")
        missing = [a for a in self.axis_order if a not in self.configs]
        if missing:
            raise EmptyConfig(f"axes without cluster config: {missing}")
        if not np.isfinite(self.w_max) or self.w_max <= 0:
            raise InvalidWMax(f"w_max must be positive, got {self.w_max}")
        if not (0.0 < self.anomaly_threshold < 1.0):
            raise InvalidThreshold(f"anomaly threshold must be in (0, 1), got {self.anomaly_threshold}")
        if not (0.0 < self.curve_tension <= 1.0):
            raise InvalidTension(f"curve tension must be in (0, 1], got {self.curve_tension}")
        object.__setattr__(self, "configs", MappingProxyType(dict(self.configs)))

    def config(self, axis: str) -> ClusterConfig:
        try:
            return self.configs[axis]
        except KeyError:
            raise UnknownAxis(f"axis {axis!r} is not part of this view") from None

    def with_config(self, axis: str, config: ClusterConfig) -> "ViewState":
        cfgs = dict(self.configs)
        cfgs[axis] = config
        return replace(self, configs=cfgs)

    def with_axis_order(self, order: Sequence[str]) -> "ViewState":
        if sorted(order) != sorted(self.axis_order):
            raise InvalidAxisOrder(f"{list(order)} is not a permutation of {list(self.axis_order)}")
        return replace(self, axis_order=tuple(order), configs=dict(self.configs))

    @property
    def adjacent_pairs(self) -> tuple[tuple[str, str], ...]:
        order = self.axis_order
        return tuple((order[i], order[i + 1]) for i in range(len(order) - 1))
