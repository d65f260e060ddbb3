"""Estimator-style entry points: an axis discretizer and a whole-plot facade.

AxisBinner follows the fit/transform contract (get_params, clone, pipelines
all work), since per-axis binning is exactly a column-wise transform.  It
validates with the usual array checks but deliberately passes NaN through as
the missing code -1 instead of rejecting it.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import binning
from .bundling import aggregate, build_layout
from .geometry import SvgStyle, render_svg
from .model import ClusterConfig, Column, Dataset, InvalidK, Kind, PlotFrame, ViewState, validate_config
from .serialize import layout_to_json

__all__ = ["AxisBinner", "ConfluentPCP"]


class AxisBinner(TransformerMixin, BaseEstimator):
    """Bin each feature of a numeric matrix into uniform-width clusters.

    Parameters
    ----------
    n_bins : int or sequence of int, default=3
        Clusters per feature.  A scalar applies to every feature.
    boundaries : dict[int, sequence of float], optional
        Explicit boundary sequences by feature index, overriding the uniform
        partition for those features.  Endpoints must match the fitted range.

    Attributes
    ----------
    n_features_in_ : int
    ranges_ : list of (min, max) per feature, over finite values.
    bin_boundaries_ : list of ndarray, the boundary grid per feature.
    n_bins_ : ndarray of effective cluster counts (constant features collapse
        to a single bin whatever was requested).

    transform returns int64 codes; NaN rows get -1, and values outside the
    fitted range raise rather than clip, because out-of-range input means the
    fitted statistics are stale.
    """

    def __init__(self, n_bins=3, boundaries=None):
        self.n_bins = n_bins
        self.boundaries = boundaries

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64, ensure_all_finite="allow-nan")
        n_features = X.shape[1]
        ks = np.broadcast_to(np.asarray(self.n_bins, dtype=object), (n_features,))
        overrides = self.boundaries or {}
        self.ranges_ = []
        self.bin_boundaries_ = []
        eff = []
        for f in range(n_features):
            col = X[:, f]
            finite = col[np.isfinite(col)]
            lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 0.0)
            self.ranges_.append((lo, hi))
            if f in overrides:
                b = tuple(float(v) for v in overrides[f])
                cfg = ClusterConfig(f"x{f}", Kind.NUMERIC, boundaries=b)
                validate_config(cfg, Column.numeric(f"x{f}", col))
                self.bin_boundaries_.append(np.asarray(b))
                eff.append(len(b) - 1)
            else:
                k = ks[f]
                if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
                    raise InvalidK(f"n_bins for feature {f} must be a positive integer, got {k!r}")
                _, bounds = binning.uniform_clusters(lo, hi, int(k))
                self.bin_boundaries_.append(np.asarray(bounds))
                eff.append(len(bounds) - 1)
        self.n_bins_ = np.asarray(eff, dtype=np.int64)
        self.n_features_in_ = n_features
        return self

    def transform(self, X):
        check_is_fitted(self, "bin_boundaries_")
        X = check_array(X, dtype=np.float64, ensure_all_finite="allow-nan")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but AxisBinner was fitted with {self.n_features_in_}"
            )
        out = np.empty(X.shape, dtype=np.int64)
        for f in range(self.n_features_in_):
            out[:, f] = binning.assign_sorted(self.bin_boundaries_[f], X[:, f])
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "bin_boundaries_")
        if input_features is None:
            input_features = [f"x{f}" for f in range(self.n_features_in_)]
        return np.asarray([f"{name}_bin" for name in input_features], dtype=object)


class ConfluentPCP(BaseEstimator):
    """One-stop facade: fit on a Dataset, read layouts, JSON, or SVG back.

    Thin sugar over the pipeline the service and CLI use; get_params/set_params
    come from the estimator base so configurations clone cleanly.
    """

    def __init__(
        self,
        axes=None,
        n_bins=3,
        w_max=40.0,
        anomaly_threshold=0.005,
        curve_tension=1.0,
        frame=None,
    ):
        self.axes = axes
        self.n_bins = n_bins
        self.w_max = w_max
        self.anomaly_threshold = anomaly_threshold
        self.curve_tension = curve_tension
        self.frame = frame

    def fit(self, dataset: Dataset, y=None):
        axes = tuple(self.axes) if self.axes is not None else dataset.column_names
        for a in axes:
            dataset.column(a)  # raises UnknownAxis early
        bins = self.n_bins if isinstance(self.n_bins, dict) else {}
        default_k = self.n_bins if not isinstance(self.n_bins, dict) else 3
        configs = {}
        for a in axes:
            col = dataset.column(a)
            configs[a] = binning.default_config(col, int(bins.get(a, default_k)))
        self.view_ = ViewState(
            dataset_id=dataset.id,
            axis_order=axes,
            configs=configs,
            w_max=self.w_max,
            anomaly_threshold=self.anomaly_threshold,
            curve_tension=self.curve_tension,
            plot=self.frame if self.frame is not None else PlotFrame(),
        )
        self.dataset_ = dataset
        return self

    def layout(self):
        check_is_fitted(self, "view_")
        return build_layout(self.view_, self.dataset_)

    def aggregates(self):
        check_is_fitted(self, "view_")
        return aggregate(self.dataset_, self.view_)

    def to_json(self) -> str:
        return layout_to_json(self.layout())

    def to_svg(self, style: SvgStyle | None = None) -> str:
        return render_svg(self.layout(), style)
