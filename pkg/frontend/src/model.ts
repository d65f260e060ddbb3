/**
 * Wire types for the layout service, plus the pixel math needed to turn a
 * dragged handle back into a data value.
 *
 * Field names match the JSON the service emits verbatim (snake_case and
 * all). Keeping them identical means no mapping layer, and it stays obvious
 * which side of the wire owns a field.
 */

export interface Frame {
    width: number;
    height: number;
    margin_top: number;
    margin_right: number;
    margin_bottom: number;
    margin_left: number;
}

export interface NumericCluster {
    center: number;
    radius: number;
    count: number;
    /** band centre in px */
    y: number;
    /** top edge in px (smaller number) */
    y0: number;
    /** bottom edge in px */
    y1: number;
}

export interface CategoricalCluster {
    label: string;
    count: number;
    y: number;
    y0: number;
    y1: number;
}

export interface NumericAxis {
    name: string;
    kind: "numeric";
    x: number;
    domain: [number, number];
    /** k+1 ascending data values */
    boundaries: number[];
    /** the same boundaries in px; descending, low values sit at the bottom */
    boundary_y: number[];
    clusters: NumericCluster[];
}

export interface CategoricalAxis {
    name: string;
    kind: "categorical";
    x: number;
    categories: string[];
    clusters: CategoricalCluster[];
}

export type Axis = NumericAxis | CategoricalAxis;

export interface BundlePath {
    x0: number;
    y0: number;
    cx1: number;
    cy1: number;
    cx2: number;
    cy2: number;
    x1: number;
    y1: number;
}

export interface Bundle {
    left_cluster: number;
    right_cluster: number;
    count: number;
    density: number;
    width: number;
    anomaly: boolean;
    path: BundlePath;
}

export interface Pair {
    left: string;
    right: string;
    total: number;
    bundles: Bundle[];
}

export interface Layout {
    dataset_id: string;
    frame: Frame;
    axes: Axis[];
    pairs: Pair[];
    kept_rows: number;
    dropped_rows: number;
    w_max: number;
    anomaly_threshold: number;
    curve_tension: number;
}

export interface ColumnSummary {
    name: string;
    kind: string;
    min?: number;
    max?: number;
    categories?: string[];
}

export interface DatasetSummary {
    dataset_id: string;
    name: string;
    row_count: number;
    columns: ColumnSummary[];
}

export type PatchOp = "reorder_axes" | "move_boundary" | "split_cluster" | "merge_at_boundary";

export interface ViewResponse {
    view_id: string;
    version: number;
    layout: Layout;
}

export type HoverTarget =
    | { kind: "bundle"; pair: number; index: number }
    | { kind: "handle"; axis: string; index: number }
    | null;

/**
 * Client-side view session. `layout` is always the last layout the server
 * acknowledged; previews never land here, so re-rendering from the model is
 * the same thing as rolling back.
 */
export interface ClientViewModel {
    viewId: string;
    version: number;
    layout: Layout;
    /** a mutation is in flight; further gestures get dropped until it settles */
    pending: boolean;
    hover: HoverTarget;
}

export function isNumericAxis(axis: Axis): axis is NumericAxis {
    return axis.kind === "numeric";
}

export function innerHeight(frame: Frame): number {
    return frame.height - frame.margin_top - frame.margin_bottom;
}

/** Data value to pixel y, matching the server's orientation (low values at the bottom). */
export function valueToY(frame: Frame, axis: NumericAxis, value: number): number {
    const [lo, hi] = axis.domain;
    if (hi === lo) {
        return frame.margin_top + innerHeight(frame) / 2;
    }
    return frame.margin_top + (innerHeight(frame) * (hi - value)) / (hi - lo);
}

/** Pixel y back to a data value; inverse of valueToY up to float noise. */
export function yToValue(frame: Frame, axis: NumericAxis, y: number): number {
    const [lo, hi] = axis.domain;
    if (hi === lo) {
        return lo;
    }
    return hi - ((y - frame.margin_top) * (hi - lo)) / innerHeight(frame);
}

export function axisByName(layout: Layout, name: string): Axis | undefined {
    return layout.axes.find((a) => a.name === name);
}

const isNum = (v: unknown): v is number => typeof v === "number" && Number.isFinite(v);

function validFrame(f: any): boolean {
    if (!f || typeof f !== "object") return false;
    const keys = ["width", "height", "margin_top", "margin_right", "margin_bottom", "margin_left"];
    return keys.every((k) => isNum(f[k]));
}

function validAxis(a: any): boolean {
    if (!a || typeof a.name !== "string" || !isNum(a.x) || !Array.isArray(a.clusters)) {
        return false;
    }
    if (a.kind === "numeric") {
        return (
            Array.isArray(a.domain) &&
            a.domain.length === 2 &&
            a.domain.every(isNum) &&
            Array.isArray(a.boundaries) &&
            Array.isArray(a.boundary_y) &&
            a.boundaries.length === a.boundary_y.length &&
            a.boundaries.length === a.clusters.length + 1 &&
            a.boundaries.every(isNum) &&
            a.boundary_y.every(isNum)
        );
    }
    if (a.kind === "categorical") {
        return Array.isArray(a.categories);
    }
    return false;
}

function validBundle(b: any): boolean {
    if (!b || !isNum(b.width) || !isNum(b.density) || !b.path) return false;
    return ["x0", "y0", "cx1", "cy1", "cx2", "cy2", "x1", "y1"].every((k) => isNum(b.path[k]));
}

/**
 * Structural check run before every render. A false here means the scene
 * shows an error banner instead of drawing garbage; it is not a full schema
 * validation, just enough to keep the renderer out of undefined territory.
 */
export function validateLayout(doc: unknown): doc is Layout {
    const d = doc as any;
    if (!d || typeof d !== "object") return false;
    if (!validFrame(d.frame)) return false;
    if (!Array.isArray(d.axes) || !d.axes.every(validAxis)) return false;
    if (!Array.isArray(d.pairs)) return false;
    for (const p of d.pairs) {
        if (!p || typeof p.left !== "string" || typeof p.right !== "string") return false;
        if (!Array.isArray(p.bundles) || !p.bundles.every(validBundle)) return false;
    }
    return isNum(d.kept_rows) && isNum(d.dropped_rows) && isNum(d.w_max);
}
