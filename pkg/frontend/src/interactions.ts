import { ApiError, Client } from "./api.js";
import type { ClientViewModel, NumericAxis, PatchOp, ViewResponse } from "./model.js";
import { axisByName, isNumericAxis, yToValue } from "./model.js";
import type { SceneHost } from "./scene.js";
import { clearBanner, renderScene, showBanner } from "./scene.js";

/**
 * Fraction of the neighbour interval kept clear when clamping an edit.
 * The server enforces its own (smaller) minimum gap; staying well inside it
 * avoids rejections from pixel rounding. Degenerate cases still get through
 * and come back as a 422, which rolls the preview back like any other error.
 */
const EDIT_MARGIN = 1e-4;

export interface ControllerOptions {
    /** called after every re-render with the current model */
    onChange?(model: ClientViewModel): void;
}

/** Map a mouse event into the svg's viewBox coordinates. */
export function clientPoint(svg: SVGSVGElement, ev: MouseEvent): { x: number; y: number } {
    const rect = svg.getBoundingClientRect();
    const vb = (svg.getAttribute("viewBox") ?? "").trim().split(/\s+/).map(Number);
    // jsdom reports a zero-size rect; client coordinates are svg coordinates then
    const sx = rect.width > 0 && vb.length === 4 && vb[2] > 0 ? vb[2] / rect.width : 1;
    const sy = rect.height > 0 && vb.length === 4 && vb[3] > 0 ? vb[3] / rect.height : 1;
    return { x: (ev.clientX - rect.left) * sx, y: (ev.clientY - rect.top) * sy };
}

/**
 * Owns one view session: renders the last acknowledged layout, wires the
 * edit gestures onto it, and pushes every edit through the service's PATCH
 * endpoint.
 *
 * Gestures preview by touching the DOM only; the model keeps the layout the
 * server last acknowledged. On success the response layout replaces it, on
 * rejection a plain re-render rolls the preview back. At most one mutation
 * is in flight; gestures arriving while one is pending are dropped with a
 * short busy flash (queueing them would only stack version conflicts).
 */
export class ViewController {
    readonly model: ClientViewModel;
    /** gestures ignored because another edit was still in flight */
    dropped = 0;
    private svg: SVGSVGElement | null = null;
    private inflight: Promise<void> | null = null;

    constructor(
        private readonly client: Client,
        private readonly host: SceneHost,
        initial: ViewResponse,
        private readonly options: ControllerOptions = {},
    ) {
        this.model = {
            viewId: initial.view_id,
            version: initial.version,
            layout: initial.layout,
            pending: false,
            hover: null,
        };
        this.render();
    }

    /** Resolves once no mutation is in flight; lets callers sequence edits. */
    async idle(): Promise<void> {
        while (this.inflight) {
            await this.inflight;
        }
    }

    /** Redraw from the acknowledged layout and re-wire gestures. */
    render(): void {
        this.svg = renderScene(this.host, this.model.layout, {
            onHover: (t) => {
                this.model.hover = t;
            },
        });
        if (this.svg) {
            this.wireGestures(this.svg);
        }
        this.options.onChange?.(this.model);
    }

    reorderAxes(order: string[]): Promise<void> {
        return this.mutate("reorder_axes", { order });
    }

    moveBoundary(axis: string, boundaryIndex: number, value: number): Promise<void> {
        return this.mutate("move_boundary", { axis, boundary_index: boundaryIndex, value });
    }

    splitCluster(axis: string, position: number): Promise<void> {
        return this.mutate("split_cluster", { axis, position });
    }

    mergeAtBoundary(axis: string, boundaryIndex: number): Promise<void> {
        return this.mutate("merge_at_boundary", { axis, boundary_index: boundaryIndex });
    }

    private cue(): void {
        this.host.container.classList.add("busy");
        setTimeout(() => this.host.container.classList.remove("busy"), 250);
    }

    private mutate(op: PatchOp, args: Record<string, unknown>): Promise<void> {
        if (this.model.pending) {
            this.dropped += 1;
            this.cue();
            this.render(); // wipe whatever preview the gesture left behind
            return Promise.resolve();
        }
        this.model.pending = true;
        const run = async () => {
            try {
                const r = await this.client.patchView(this.model.viewId, this.model.version, op, args);
                this.model.layout = r.layout;
                this.model.version = r.version;
                clearBanner(this.host);
            } catch (e) {
                if (e instanceof ApiError && e.conflict) {
                    showBanner(this.host, `edit rejected: ${e.message}; reloading the current view`);
                    await this.resync();
                } else if (e instanceof ApiError) {
                    showBanner(this.host, `edit rejected (${e.code}): ${e.message}`);
                } else {
                    showBanner(this.host, `edit failed: ${e}`);
                }
            } finally {
                this.model.pending = false;
                this.inflight = null;
                // ack or rollback, the scene follows the acknowledged layout
                this.render();
            }
        };
        const p = run();
        this.inflight = p;
        return p;
    }

    /** After a version conflict the server state has moved on; fetch it. */
    private async resync(): Promise<void> {
        try {
            const r = await this.client.getLayout(this.model.viewId);
            this.model.layout = r.layout;
            this.model.version = r.version;
        } catch (e) {
            console.warn("could not reload the view after a conflict", e);
        }
    }

    /** Keep a dragged boundary strictly between its neighbours; null when there is no room. */
    private clampBoundary(axis: NumericAxis, index: number, value: number): number | null {
        const b = axis.boundaries;
        if (index < 1 || index > b.length - 2) return null;
        const lo = b[index - 1];
        const hi = b[index + 1];
        const margin = (hi - lo) * EDIT_MARGIN;
        if (hi - lo <= 2 * margin) return null;
        return Math.min(hi - margin, Math.max(lo + margin, value));
    }

    private wireGestures(svg: SVGSVGElement): void {
        svg.addEventListener("mousedown", (ev) => {
            if (ev.button !== 0) return;
            const target = ev.target as Element;
            const handle = target.closest(".handle");
            const label = target.closest(".axis-label");
            if (!handle && !label) return;
            ev.preventDefault();
            if (this.model.pending) {
                this.dropped += 1;
                this.cue();
                return;
            }
            if (handle) {
                this.beginHandleDrag(svg, handle as SVGCircleElement, ev);
            } else {
                this.beginAxisDrag(svg, label as SVGTextElement, ev);
            }
        });

        svg.addEventListener("dblclick", (ev) => {
            const target = ev.target as Element;
            const handle = target.closest(".handle");
            const cluster = target.closest(".cluster");
            if (!handle && !cluster) return;
            if (this.model.pending) {
                this.dropped += 1;
                this.cue();
                return;
            }
            if (handle) {
                const axisName = handle.getAttribute("data-axis")!;
                const index = Number(handle.getAttribute("data-index"));
                handle.remove(); // optimistic: the boundary is going away
                void this.mergeAtBoundary(axisName, index);
                return;
            }
            this.splitAt(svg, cluster!, ev);
        });
    }

    private splitAt(svg: SVGSVGElement, cluster: Element, ev: MouseEvent): void {
        if (cluster.getAttribute("data-kind") !== "numeric") return;
        const axisName = cluster.getAttribute("data-axis")!;
        const index = Number(cluster.getAttribute("data-cluster"));
        const axis = axisByName(this.model.layout, axisName);
        if (!axis || !isNumericAxis(axis)) return;

        const y = clientPoint(svg, ev).y;
        const lo = axis.boundaries[index];
        const hi = axis.boundaries[index + 1];
        const margin = (hi - lo) * EDIT_MARGIN;
        if (hi - lo <= 2 * margin) {
            showBanner(this.host, `cluster on ${axisName} is too narrow to split`);
            return;
        }
        const position = Math.min(hi - margin, Math.max(lo + margin, yToValue(this.model.layout.frame, axis, y)));

        // optimistic: show the boundary-to-be at the click position
        const preview = document.createElementNS("http://www.w3.org/2000/svg", "line");
        preview.classList.add("preview-boundary");
        preview.setAttribute("x1", "-8");
        preview.setAttribute("x2", "8");
        preview.setAttribute("y1", String(y));
        preview.setAttribute("y2", String(y));
        cluster.parentElement?.appendChild(preview);

        void this.splitCluster(axisName, position);
    }

    private beginHandleDrag(svg: SVGSVGElement, handle: SVGCircleElement, down: MouseEvent): void {
        const axisName = handle.getAttribute("data-axis")!;
        const index = Number(handle.getAttribute("data-index"));
        const axis = axisByName(this.model.layout, axisName);
        if (!axis || !isNumericAxis(axis)) return;

        let lastY = clientPoint(svg, down).y;
        let moved = false;
        const move = (ev: MouseEvent) => {
            lastY = clientPoint(svg, ev).y;
            moved = true;
            handle.classList.add("dragging");
            handle.setAttribute("cy", String(lastY)); // preview only, DOM not model
        };
        const up = () => {
            window.removeEventListener("mousemove", move);
            window.removeEventListener("mouseup", up);
            handle.classList.remove("dragging");
            if (!moved) {
                this.render();
                return;
            }
            const value = this.clampBoundary(axis, index, yToValue(this.model.layout.frame, axis, lastY));
            if (value === null || value === axis.boundaries[index]) {
                this.render(); // nowhere to go, or a no-op move: snap back quietly
                return;
            }
            void this.moveBoundary(axisName, index, value);
        };
        window.addEventListener("mousemove", move);
        window.addEventListener("mouseup", up);
    }

    private beginAxisDrag(svg: SVGSVGElement, label: SVGTextElement, down: MouseEvent): void {
        const axisName = label.getAttribute("data-axis")!;
        const group = label.closest("g.axis");
        const from = this.model.layout.axes.findIndex((a) => a.name === axisName);
        if (!group || from < 0) return;
        const homeX = this.model.layout.axes[from].x;

        const startX = clientPoint(svg, down).x;
        let lastX = startX;
        let moved = false;
        const move = (ev: MouseEvent) => {
            lastX = clientPoint(svg, ev).x;
            moved = true;
            group.classList.add("dragging");
            group.setAttribute("transform", `translate(${homeX + (lastX - startX)},0)`);
        };
        const up = () => {
            window.removeEventListener("mousemove", move);
            window.removeEventListener("mouseup", up);
            group.classList.remove("dragging");
            const slots = this.model.layout.axes.map((a) => a.x);
            const finalX = homeX + (lastX - startX);
            let target = 0;
            for (let i = 1; i < slots.length; i++) {
                if (Math.abs(slots[i] - finalX) < Math.abs(slots[target] - finalX)) {
                    target = i;
                }
            }
            if (!moved || target === from) {
                this.render();
                return;
            }
            const order = this.model.layout.axes.map((a) => a.name);
            order.splice(target, 0, ...order.splice(from, 1));
            void this.reorderAxes(order);
        };
        window.addEventListener("mousemove", move);
        window.addEventListener("mouseup", up);
    }
}
