import type {
    Axis,
    CategoricalAxis,
    Bundle,
    Frame,
    Layout,
    NumericAxis,
    ViewResponse,
} from "../src/model.js";
import type { SceneHost } from "../src/scene.js";
import { renderScene } from "../src/scene.js";

export function frame(): Frame {
    return {
        width: 960,
        height: 540,
        margin_top: 42,
        margin_right: 60,
        margin_bottom: 24,
        margin_left: 60,
    };
}

function scaleFor(f: Frame, lo: number, hi: number): (v: number) => number {
    const inner = f.height - f.margin_top - f.margin_bottom;
    return (v) => f.margin_top + (inner * (hi - v)) / (hi - lo);
}

export function numericAxis(
    name: string,
    x: number,
    lo: number,
    hi: number,
    boundaries: number[],
    counts: number[],
): NumericAxis {
    const f = frame();
    const y = scaleFor(f, lo, hi);
    return {
        name,
        kind: "numeric",
        x,
        domain: [lo, hi],
        boundaries,
        boundary_y: boundaries.map(y),
        clusters: counts.map((count, i) => ({
            center: (boundaries[i] + boundaries[i + 1]) / 2,
            radius: (boundaries[i + 1] - boundaries[i]) / 2,
            count,
            y: y((boundaries[i] + boundaries[i + 1]) / 2),
            y0: y(boundaries[i + 1]),
            y1: y(boundaries[i]),
        })),
    };
}

export function categoricalAxis(
    name: string,
    x: number,
    categories: string[],
    counts: number[],
): CategoricalAxis {
    const f = frame();
    const inner = f.height - f.margin_top - f.margin_bottom;
    const band = inner / categories.length;
    return {
        name,
        kind: "categorical",
        x,
        categories,
        clusters: categories.map((label, i) => {
            const y0 = f.margin_top + i * band;
            return { label, count: counts[i], y: y0 + band / 2, y0, y1: y0 + band };
        }),
    };
}

export function bundleBetween(
    left: Axis,
    right: Axis,
    li: number,
    ri: number,
    count: number,
    total: number,
    wMax = 40,
    threshold = 0.005,
): Bundle {
    const density = count / total;
    const y0 = left.clusters[li].y;
    const y1 = right.clusters[ri].y;
    const half = (right.x - left.x) / 2;
    return {
        left_cluster: li,
        right_cluster: ri,
        count,
        density,
        width: density * wMax,
        anomaly: count > 0 && density < threshold,
        path: {
            x0: left.x,
            y0,
            cx1: left.x + half,
            cy1: y0,
            cx2: right.x - half,
            cy2: y1,
            x1: right.x,
            y1,
        },
    };
}

function spread(total: number, k: number): number[] {
    const base = Math.floor(total / k);
    const counts = Array.from({ length: k }, () => base);
    counts[0] += total - base * k;
    return counts;
}

export interface FixtureOptions {
    mpgBoundaries?: number[];
    mpgCounts?: number[];
}

/**
 * Two numeric axes with one pair of five bundles, one of them anomalous;
 * 400 rows, densities sum to one. Overriding the mpg boundaries produces
 * the "server applied my edit" variants the interaction tests respond with.
 */
export function fixtureLayout(opts: FixtureOptions = {}): Layout {
    const bounds = opts.mpgBoundaries ?? [0, 3, 6, 9];
    const k = bounds.length - 1;
    const counts = opts.mpgCounts ?? (k === 3 ? [150, 200, 50] : spread(400, k));
    const mpg = numericAxis("mpg", 60, 0, 9, bounds, counts);
    const hp = numericAxis("hp", 900, 0, 100, [0, 50, 75, 100], [159, 190, 51]);
    const bundles =
        k === 3
            ? [
                  bundleBetween(mpg, hp, 1, 1, 190, 400),
                  bundleBetween(mpg, hp, 0, 0, 150, 400),
                  bundleBetween(mpg, hp, 2, 2, 50, 400),
                  bundleBetween(mpg, hp, 1, 0, 9, 400),
                  bundleBetween(mpg, hp, 1, 2, 1, 400),
              ]
            : counts
                  .map((c, i) => bundleBetween(mpg, hp, i, Math.min(i, 2), c, 400))
                  .sort((a, b) => b.count - a.count);
    return {
        dataset_id: "ds-test",
        frame: frame(),
        axes: [mpg, hp],
        pairs: [{ left: "mpg", right: "hp", total: 400, bundles }],
        kept_rows: 400,
        dropped_rows: 0,
        w_max: 40,
        anomaly_threshold: 0.005,
        curve_tension: 1,
    };
}

/** A categorical axis on the left, numeric on the right. */
export function categoricalLayout(): Layout {
    const origin = categoricalAxis("origin", 60, ["us", "eu"], [250, 150]);
    const mpg = numericAxis("mpg", 900, 0, 9, [0, 3, 6, 9], [150, 200, 50]);
    const bundles = [
        bundleBetween(origin, mpg, 0, 0, 150, 400),
        bundleBetween(origin, mpg, 0, 1, 100, 400),
        bundleBetween(origin, mpg, 1, 1, 100, 400),
        bundleBetween(origin, mpg, 1, 2, 50, 400),
    ];
    return {
        dataset_id: "ds-cat",
        frame: frame(),
        axes: [origin, mpg],
        pairs: [{ left: "origin", right: "mpg", total: 400, bundles }],
        kept_rows: 400,
        dropped_rows: 0,
        w_max: 40,
        anomaly_threshold: 0.005,
        curve_tension: 1,
    };
}

export function vr(layout: Layout, version = 1, viewId = "v-test"): ViewResponse {
    return { view_id: viewId, version, layout };
}

export function makeHost(): Required<SceneHost> {
    document.body.innerHTML = "";
    const container = document.createElement("div");
    const banner = document.createElement("div");
    const tooltip = document.createElement("div");
    container.id = "plot";
    banner.id = "banner";
    tooltip.id = "tooltip";
    document.body.append(container, banner, tooltip);
    return { container, banner, tooltip };
}

/** Markup a detached render of the layout produces; the innerHTML oracle for scene equality. */
export function renderedHtml(layout: Layout): string {
    const container = document.createElement("div");
    const banner = document.createElement("div");
    renderScene({ container, banner }, layout);
    return container.innerHTML;
}

export function mouse(type: string, init: MouseEventInit = {}): MouseEvent {
    return new MouseEvent(type, { bubbles: true, cancelable: true, ...init });
}

/** mousedown on the target, two mousemoves, mouseup; all in client coordinates. */
export function drag(
    target: Element,
    from: { x: number; y: number },
    to: { x: number; y: number },
): void {
    target.dispatchEvent(mouse("mousedown", { clientX: from.x, clientY: from.y, button: 0 }));
    window.dispatchEvent(
        mouse("mousemove", { clientX: (from.x + to.x) / 2, clientY: (from.y + to.y) / 2 }),
    );
    window.dispatchEvent(mouse("mousemove", { clientX: to.x, clientY: to.y }));
    window.dispatchEvent(mouse("mouseup", { clientX: to.x, clientY: to.y }));
}

export function jsonResponse(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
    });
}
