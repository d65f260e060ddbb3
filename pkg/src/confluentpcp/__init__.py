"""Confluent-drawing parallel coordinates: per-axis binning, density bundles,
row-count-independent layouts, with an HTTP service and CLI on top."""

from .binning import (
    assign,
    assign_sorted,
    assign_uniform,
    default_config,
    merge_at_boundary,
    move_boundary,
    split_cluster,
    uniform_clusters,
    uniform_config,
)
from .bundling import (
    aggregate,
    build_layout,
    count_pairs,
    densities,
    flag_anomalies,
    make_bundles,
    widths,
)
from .estimator import AxisBinner, ConfluentPCP
from .geometry import axis_scale, bundle_path, compose_layout, render_svg
from .ingest import IngestOptions, parse_file, parse_table, synthesize
from .model import (
    Bundle,
    BundleLayout,
    Cluster,
    ClusterConfig,
    Column,
    Dataset,
    EngineError,
    Kind,
    MISSING,
    PlotFrame,
    ViewState,
    validate_config,
)
from .serialize import layout_to_dict, layout_to_json

__version__ = "0.1.0"

__all__ = [
    "AxisBinner",
    "Bundle",
    "BundleLayout",
    "Cluster",
    "ClusterConfig",
    "Column",
    "ConfluentPCP",
    "Dataset",
    "EngineError",
    "IngestOptions",
    "Kind",
    "MISSING",
    "PlotFrame",
    "ViewState",
    "aggregate",
    "assign",
    "assign_sorted",
    "assign_uniform",
    "axis_scale",
    "build_layout",
    "bundle_path",
    "compose_layout",
    "count_pairs",
    "default_config",
    "densities",
    "flag_anomalies",
    "layout_to_dict",
    "layout_to_json",
    "make_bundles",
    "merge_at_boundary",
    "move_boundary",
    "parse_file",
    "parse_table",
    "render_svg",
    "split_cluster",
    "synthesize",
    "uniform_clusters",
    "uniform_config",
    "validate_config",
    "widths",
]
