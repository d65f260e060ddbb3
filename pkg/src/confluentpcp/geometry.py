"""Pixel mapping and drawing: axis scales, C1 Bezier bundles, SVG output.

Screen y grows downward, so the numeric scale puts d_max at the top inner
edge.  All emitted numbers are fixed-format for byte-identical output across
platforms: coordinates to 3 decimals, stroke widths to 6 (width equality to
the density formula is checked tighter than pixel positions ever need).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundling import ViewAggregates, make_bundles
from .model import (
    AxisLayout,
    BezierPath,
    Bundle,
    BundleArc,
    BundleLayout,
    ClusterBand,
    ClusterConfig,
    Dataset,
    DegenerateSpan,
    InvalidTension,
    Kind,
    PairLayout,
    PlotFrame,
    ViewState,
)

__all__ = ["axis_scale", "bundle_path", "compose_layout", "render_svg", "SvgStyle"]


def axis_scale(config: ClusterConfig, frame: PlotFrame):
    """Value -> pixel-y map for one axis.

    Numeric: linear, d_min at the bottom inner edge, d_max at the top; a
    degenerate range maps everything to mid-height.  Categorical: k equal
    bands indexed top to bottom, input is the band coordinate in [0, k]
    (cluster j's center sits at j + 0.5).
    """
    top = frame.margin_top
    inner = frame.inner_height
    if config.kind is Kind.NUMERIC:
        lo, hi = config.boundaries[0], config.boundaries[-1]
        if hi == lo:
            return lambda v: top + inner / 2.0
        return lambda v: top + inner * (hi - v) / (hi - lo)
    k = config.k
    return lambda band: top + inner * band / k


def bundle_path(
    bundle: Bundle,
    left_x: float,
    right_x: float,
    left_y: float,
    right_y: float,
    tension: float = 1.0,
) -> BezierPath:
    """Cubic Bezier between two cluster centers with horizontal end tangents.

    Controls sit at x +- tension * span / 2 on the endpoint y levels, so every
    bundle leaves and enters an axis flat: curves meeting at a shared cluster
    node join C1-continuously whatever their far ends do.
    """
    if not left_x < right_x:
        raise DegenerateSpan(f"axis x positions must increase, got {left_x} >= {right_x}")
    if not (0.0 < tension <= 1.0):
        raise InvalidTension(f"curve tension must be in (0, 1], got {tension}")
    reach = tension * (right_x - left_x) / 2.0
    return BezierPath(
        x0=left_x,
        y0=left_y,
        cx1=left_x + reach,
        cy1=left_y,
        cx2=right_x - reach,
        cy2=right_y,
        x1=right_x,
        y1=right_y,
        stroke_width=bundle.width,
        dashed=bundle.anomaly,
    )


def _numeric_axis(axis: str, config: ClusterConfig, counts, x: float, frame: PlotFrame) -> AxisLayout:
    y = axis_scale(config, frame)
    b = config.boundaries
    centers, radii = config.centers(), config.radii()
    bands = tuple(
        ClusterBand(
            count=int(counts[j]),
            y=y(centers[j]),
            y0=y(b[j + 1]),  # higher value, smaller y
            y1=y(b[j]),
            center=centers[j],
            radius=radii[j],
        )
        for j in range(config.k)
    )
    return AxisLayout(
        name=axis,
        kind=Kind.NUMERIC,
        x=x,
        lo=b[0],
        hi=b[-1],
        categories=(),
        boundaries=b,
        boundary_y=tuple(y(v) for v in b),
        clusters=bands,
    )


def _categorical_axis(axis: str, config: ClusterConfig, counts, x: float, frame: PlotFrame) -> AxisLayout:
    y = axis_scale(config, frame)
    bands = tuple(
        ClusterBand(
            count=int(counts[j]),
            y=y(j + 0.5),
            y0=y(j),
            y1=y(j + 1),
            label=config.categories[j],
        )
        for j in range(config.k)
    )
    return AxisLayout(
        name=axis,
        kind=Kind.CATEGORICAL,
        x=x,
        lo=None,
        hi=None,
        categories=config.categories,
        boundaries=(),
        boundary_y=(),
        clusters=bands,
    )


def compose_layout(dataset: Dataset, view: ViewState, agg: ViewAggregates) -> BundleLayout:
    """Turn aggregates into the renderable document.

    Cost is O(sum over pairs of k_left * k_right); the rows were already folded
    into ``agg`` and are never touched here.
    """
    frame = view.plot
    order = view.axis_order
    axes = []
    center_y: dict[str, tuple[float, ...]] = {}
    for i, axis in enumerate(order):
        cfg = view.config(axis)
        x = frame.axis_x(i, len(order))
        counts = agg.axis_counts[axis]
        if cfg.kind is Kind.NUMERIC:
            al = _numeric_axis(axis, cfg, counts, x, frame)
        else:
            al = _categorical_axis(axis, cfg, counts, x, frame)
        axes.append(al)
        center_y[axis] = tuple(band.y for band in al.clusters)
    x_of = {al.name: al.x for al in axes}
    pairs = []
    for a, b in view.adjacent_pairs:
        counts = agg.pair_counts[(a, b)]
        arcs = tuple(
            BundleArc(
                bundle,
                bundle_path(
                    bundle,
                    x_of[a],
                    x_of[b],
                    center_y[a][bundle.left_cluster],
                    center_y[b][bundle.right_cluster],
                    view.curve_tension,
                ),
            )
            for bundle in make_bundles(counts, view.w_max, view.anomaly_threshold)
        )
        pairs.append(PairLayout(a, b, int(counts.sum()), arcs))
    return BundleLayout(
        dataset_id=dataset.id,
        frame=frame,
        w_max=view.w_max,
        anomaly_threshold=view.anomaly_threshold,
        curve_tension=view.curve_tension,
        axes=tuple(axes),
        pairs=tuple(pairs),
        kept_rows=agg.kept_rows,
        dropped_rows=agg.dropped_rows,
    )


# ---------------------------------------------------------------------------
# SVG

@dataclass(frozen=True)
class SvgStyle:
    background: str = "#ffffff"
    bundle_color: str = "#3f6fa8"
    cluster_fill: str = "#d7e2ef"
    axis_color: str = "#222222"
    handle_fill: str = "#ffffff"
    text_color: str = "#333333"
    font_family: str = "sans-serif"
    font_size: float = 11.0
    cluster_width: float = 10.0
    handle_radius: float = 4.0
    dash_pattern: str = "6 4"


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _w(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(layout: BundleLayout, style: SvgStyle | None = None) -> str:
    """Deterministic SVG document for a layout.

    Element order is fixed: cluster extents, then bundle paths per pair left to
    right (widest first, so dashed anomalies land on top), then axis lines,
    handles and labels.  Rendering the same layout twice yields identical
    bytes.
    """
    st = style or SvgStyle()
    frame = layout.frame
    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(frame.width)}" height="{_f(frame.height)}" '
        f'viewBox="0 0 {_f(frame.width)} {_f(frame.height)}" font-family="{st.font_family}">'
    )
    out.append(f'<rect width="{_f(frame.width)}" height="{_f(frame.height)}" fill="{st.background}"/>')

    half = st.cluster_width / 2.0
    for ax in layout.axes:
        for band in ax.clusters:
            out.append(
                f'<rect class="cluster" x="{_f(ax.x - half)}" y="{_f(band.y0)}" '
                f'width="{_f(st.cluster_width)}" height="{_f(band.y1 - band.y0)}" '
                f'fill="{st.cluster_fill}"/>'
            )

    for pair in layout.pairs:
        for arc in pair.bundles:
            p = arc.path
            dash = f' stroke-dasharray="{st.dash_pattern}"' if p.dashed else ""
            out.append(
                f'<path class="bundle" d="M {_f(p.x0)} {_f(p.y0)} C {_f(p.cx1)} {_f(p.cy1)} '
                f'{_f(p.cx2)} {_f(p.cy2)} {_f(p.x1)} {_f(p.y1)}" fill="none" '
                f'stroke="{st.bundle_color}" stroke-width="{_w(p.stroke_width)}" '
                f'stroke-opacity="0.75"{dash}/>'
            )

    y_top, y_bot = frame.margin_top, frame.margin_top + frame.inner_height
    for ax in layout.axes:
        out.append(
            f'<line class="axis" x1="{_f(ax.x)}" y1="{_f(y_top)}" x2="{_f(ax.x)}" y2="{_f(y_bot)}" '
            f'stroke="{st.axis_color}" stroke-width="1"/>'
        )
        # interior boundaries get the draggable-handle glyph
        for by in ax.boundary_y[1:-1]:
            out.append(
                f'<circle class="handle" cx="{_f(ax.x)}" cy="{_f(by)}" r="{_f(st.handle_radius)}" '
                f'fill="{st.handle_fill}" stroke="{st.axis_color}" stroke-width="1"/>'
            )
        out.append(
            f'<text class="axis-label" x="{_f(ax.x)}" y="{_f(y_top - 18.0)}" text-anchor="middle" '
            f'font-size="{_f(st.font_size + 1.0)}" fill="{st.text_color}">{_esc(ax.name)}</text>'
        )
        if ax.kind is Kind.NUMERIC:
            out.append(
                f'<text class="tick" x="{_f(ax.x)}" y="{_f(y_top - 5.0)}" text-anchor="middle" '
                f'font-size="{_f(st.font_size - 2.0)}" fill="{st.text_color}">{_num(ax.hi)}</text>'
            )
            out.append(
                f'<text class="tick" x="{_f(ax.x)}" y="{_f(y_bot + 12.0)}" text-anchor="middle" '
                f'font-size="{_f(st.font_size - 2.0)}" fill="{st.text_color}">{_num(ax.lo)}</text>'
            )
        else:
            for band in ax.clusters:
                out.append(
                    f'<text class="tick" x="{_f(ax.x - half - 4.0)}" y="{_f(band.y + 3.0)}" '
                    f'text-anchor="end" font-size="{_f(st.font_size - 2.0)}" '
                    f'fill="{st.text_color}">{_esc(band.label or "")}</text>'
                )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _num(v: float | None) -> str:
    if v is None:
        return ""
    return f"{v:g}"
