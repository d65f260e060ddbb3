import type { Bundle, HoverTarget, Layout, NumericAxis } from "./model.js";
import { isNumericAxis, validateLayout } from "./model.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Pixel radius of a control-point handle; doubles as its hit radius. */
export const HANDLE_RADIUS = 6;

/** Half-width of the cluster band marks drawn along each axis. */
const BAND_HALF_WIDTH = 5;

export interface SceneHost {
    /** node the svg is (re)placed into */
    container: HTMLElement;
    /** error strip; gets the `visible` class while showing a message */
    banner: HTMLElement;
    /** optional hover readout */
    tooltip?: HTMLElement;
}

export interface SceneHooks {
    onHover?(target: HoverTarget): void;
}

function el<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
    return document.createElementNS(SVG_NS, tag);
}

const fmt = (v: number): string => Number(v.toPrecision(6)).toString();

export function showBanner(host: SceneHost, message: string): void {
    host.banner.textContent = message;
    host.banner.classList.add("visible");
}

export function clearBanner(host: SceneHost): void {
    host.banner.textContent = "";
    host.banner.classList.remove("visible");
}

export function bundleLabel(b: Bundle): string {
    return `${b.count} rows, density ${b.density.toFixed(4)}`;
}

function showTooltip(host: SceneHost, text: string, ev: MouseEvent): void {
    if (!host.tooltip) return;
    host.tooltip.textContent = text;
    host.tooltip.classList.add("visible");
    host.tooltip.style.left = `${ev.clientX + 12}px`;
    host.tooltip.style.top = `${ev.clientY + 12}px`;
}

function hideTooltip(host: SceneHost): void {
    if (!host.tooltip) return;
    host.tooltip.textContent = "";
    host.tooltip.classList.remove("visible");
}

function hoverable(
    node: SVGElement,
    host: SceneHost,
    hooks: SceneHooks,
    target: Exclude<HoverTarget, null>,
    text: string,
): void {
    node.addEventListener("mouseenter", (ev) => {
        showTooltip(host, text, ev as MouseEvent);
        hooks.onHover?.(target);
    });
    node.addEventListener("mouseleave", () => {
        hideTooltip(host);
        hooks.onHover?.(null);
    });
}

function buildBundles(layout: Layout, host: SceneHost, hooks: SceneHooks): SVGGElement {
    const group = el("g");
    group.classList.add("bundles");
    layout.pairs.forEach((pair, pi) => {
        // server order is widest first, so thin strokes end up painted on top
        pair.bundles.forEach((b, bi) => {
            const p = b.path;
            const path = el("path");
            path.setAttribute(
                "d",
                `M ${p.x0} ${p.y0} C ${p.cx1} ${p.cy1}, ${p.cx2} ${p.cy2}, ${p.x1} ${p.y1}`,
            );
            path.setAttribute("stroke-width", String(b.width));
            path.setAttribute("fill", "none");
            path.classList.add("bundle");
            if (b.anomaly) {
                // keep the dash visible even when the stylesheet is missing
                path.classList.add("anomaly");
                path.setAttribute("stroke-dasharray", "6 4");
            }
            path.setAttribute("data-pair", String(pi));
            path.setAttribute("data-bundle", String(bi));
            const title = el("title");
            title.textContent = bundleLabel(b);
            path.appendChild(title);
            hoverable(path, host, hooks, { kind: "bundle", pair: pi, index: bi }, bundleLabel(b));
            group.appendChild(path);
        });
    });
    return group;
}

function buildHandles(
    axis: NumericAxis,
    host: SceneHost,
    hooks: SceneHooks,
    group: SVGGElement,
): void {
    for (let j = 1; j < axis.boundary_y.length - 1; j++) {
        const handle = el("circle");
        handle.classList.add("handle");
        handle.setAttribute("cx", "0");
        handle.setAttribute("cy", String(axis.boundary_y[j]));
        handle.setAttribute("r", String(HANDLE_RADIUS));
        handle.setAttribute("data-axis", axis.name);
        handle.setAttribute("data-index", String(j));
        hoverable(
            handle,
            host,
            hooks,
            { kind: "handle", axis: axis.name, index: j },
            `boundary at ${fmt(axis.boundaries[j])}`,
        );
        group.appendChild(handle);
    }
}

function buildAxis(layout: Layout, axis: Layout["axes"][number], host: SceneHost, hooks: SceneHooks): SVGGElement {
    const f = layout.frame;
    const group = el("g");
    group.classList.add("axis");
    group.setAttribute("transform", `translate(${axis.x},0)`);
    group.setAttribute("data-axis", axis.name);

    const line = el("line");
    line.classList.add("axis-line");
    line.setAttribute("x1", "0");
    line.setAttribute("x2", "0");
    line.setAttribute("y1", String(f.margin_top));
    line.setAttribute("y2", String(f.height - f.margin_bottom));
    line.setAttribute("stroke", "#444");
    group.appendChild(line);

    axis.clusters.forEach((c, i) => {
        const band = el("rect");
        band.classList.add("cluster");
        band.setAttribute("x", String(-BAND_HALF_WIDTH));
        band.setAttribute("width", String(2 * BAND_HALF_WIDTH));
        band.setAttribute("y", String(c.y0));
        band.setAttribute("height", String(c.y1 - c.y0));
        band.setAttribute("data-axis", axis.name);
        band.setAttribute("data-cluster", String(i));
        band.setAttribute("data-kind", axis.kind);
        const title = el("title");
        title.textContent = isNumericAxis(axis)
            ? `${c.count} rows in [${fmt(axis.boundaries[i])}, ${fmt(axis.boundaries[i + 1])}]`
            : `${(c as { label: string }).label}: ${c.count} rows`;
        band.appendChild(title);
        group.appendChild(band);
    });

    if (isNumericAxis(axis)) {
        const [lo, hi] = axis.domain;
        const top = el("text");
        top.classList.add("tick");
        top.setAttribute("x", String(BAND_HALF_WIDTH + 3));
        top.setAttribute("y", String(f.margin_top + 3));
        top.textContent = fmt(hi);
        const bottom = el("text");
        bottom.classList.add("tick");
        bottom.setAttribute("x", String(BAND_HALF_WIDTH + 3));
        bottom.setAttribute("y", String(f.height - f.margin_bottom + 3));
        bottom.textContent = fmt(lo);
        group.append(top, bottom);
        buildHandles(axis, host, hooks, group);
    }

    const label = el("text");
    label.classList.add("axis-label");
    label.setAttribute("x", "0");
    label.setAttribute("y", String(f.margin_top - 14));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("data-axis", axis.name);
    label.textContent = axis.name;
    group.appendChild(label);

    return group;
}

/**
 * Build the plot DOM for one layout and swap it into the host container.
 *
 * Returns the svg element, or null when the layout fails the structural
 * check (the banner explains; nothing is drawn). The svg carries no state
 * of its own: rendering the same layout twice yields identical markup,
 * which is what lets callers compare scenes by innerHTML.
 */
export function renderScene(host: SceneHost, layout: Layout, hooks: SceneHooks = {}): SVGSVGElement | null {
    if (!validateLayout(layout)) {
        host.container.replaceChildren();
        showBanner(host, "the server returned a layout this client cannot draw");
        return null;
    }
    const f = layout.frame;
    const svg = el("svg");
    svg.classList.add("pcp");
    svg.setAttribute("viewBox", `0 0 ${f.width} ${f.height}`);
    svg.setAttribute("width", String(f.width));
    svg.setAttribute("height", String(f.height));

    svg.appendChild(buildBundles(layout, host, hooks));
    for (const axis of layout.axes) {
        svg.appendChild(buildAxis(layout, axis, host, hooks));
    }

    host.container.replaceChildren(svg);
    return svg;
}
