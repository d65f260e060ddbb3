import { describe, expect, it } from "vitest";
import type { HoverTarget } from "../src/model.js";
import { HANDLE_RADIUS, bundleLabel, renderScene } from "../src/scene.js";
import { categoricalLayout, fixtureLayout, makeHost, mouse, renderedHtml } from "./helpers.js";

describe("renderScene", () => {
    it("draws two axes, four interior handles and at most nine bundles", () => {
        const host = makeHost();
        const svg = renderScene(host, fixtureLayout())!;
        expect(svg).not.toBeNull();
        expect(svg.querySelectorAll("g.axis").length).toBe(2);
        expect(svg.querySelectorAll(".handle").length).toBe(4);
        const bundles = svg.querySelectorAll("path.bundle");
        expect(bundles.length).toBe(5);
        expect(bundles.length).toBeLessThanOrEqual(9);
        expect(svg.querySelector(".handle")!.getAttribute("r")).toBe(String(HANDLE_RADIUS));
    });

    it("keeps the server's widest-first paint order", () => {
        const svg = renderScene(makeHost(), fixtureLayout())!;
        const widths = [...svg.querySelectorAll("path.bundle")].map((p) =>
            Number(p.getAttribute("stroke-width")),
        );
        expect(widths.length).toBe(5);
        expect(widths).toEqual([...widths].sort((a, b) => b - a));
    });

    it("dashes exactly the anomalous bundles", () => {
        const svg = renderScene(makeHost(), fixtureLayout())!;
        const dashed = svg.querySelectorAll("path.bundle[stroke-dasharray]");
        expect(dashed.length).toBe(1);
        expect(dashed[0].classList.contains("anomaly")).toBe(true);
        expect(svg.querySelectorAll("path.bundle.anomaly").length).toBe(1);
    });

    it("produces identical markup for the same layout", () => {
        expect(renderedHtml(fixtureLayout())).toBe(renderedHtml(fixtureLayout()));
    });

    it("shows count and density on bundle hover", () => {
        const host = makeHost();
        const seen: HoverTarget[] = [];
        const svg = renderScene(host, fixtureLayout(), { onHover: (t) => seen.push(t) })!;
        const path = svg.querySelector("path.bundle")!;
        path.dispatchEvent(mouse("mouseenter", { clientX: 200, clientY: 200 }));
        expect(host.tooltip.textContent).toBe("190 rows, density 0.4750");
        expect(host.tooltip.classList.contains("visible")).toBe(true);
        expect(seen[0]).toEqual({ kind: "bundle", pair: 0, index: 0 });
        path.dispatchEvent(mouse("mouseleave"));
        expect(host.tooltip.textContent).toBe("");
        expect(seen[1]).toBeNull();
    });

    it("names the boundary value on handle hover", () => {
        const host = makeHost();
        const svg = renderScene(host, fixtureLayout())!;
        const handle = svg.querySelector('.handle[data-axis="mpg"][data-index="1"]')!;
        handle.dispatchEvent(mouse("mouseenter", { clientX: 60, clientY: 358 }));
        expect(host.tooltip.textContent).toBe("boundary at 3");
    });

    it("puts a native title on every bundle", () => {
        const svg = renderScene(makeHost(), fixtureLayout())!;
        const first = svg.querySelector("path.bundle title")!;
        expect(first.textContent).toBe(bundleLabel(fixtureLayout().pairs[0].bundles[0]));
    });

    it("leaves categorical axes without handles or ticks", () => {
        const svg = renderScene(makeHost(), categoricalLayout())!;
        expect(svg.querySelectorAll('.handle[data-axis="origin"]').length).toBe(0);
        expect(svg.querySelectorAll('g.axis[data-axis="origin"] .tick').length).toBe(0);
        expect(svg.querySelectorAll('.cluster[data-axis="origin"]').length).toBe(2);
        expect(svg.querySelectorAll('.cluster[data-kind="categorical"]').length).toBe(2);
        // the numeric neighbour keeps its handles
        expect(svg.querySelectorAll('.handle[data-axis="mpg"]').length).toBe(2);
    });

    it("draws axes only when there are no pairs", () => {
        const layout = fixtureLayout();
        layout.pairs = [];
        const svg = renderScene(makeHost(), layout)!;
        expect(svg.querySelectorAll("path.bundle").length).toBe(0);
        expect(svg.querySelectorAll("g.axis").length).toBe(2);
    });

    it("refuses a malformed layout with a banner", () => {
        const host = makeHost();
        const bad: any = fixtureLayout();
        delete bad.frame;
        expect(renderScene(host, bad)).toBeNull();
        expect(host.container.querySelector("svg")).toBeNull();
        expect(host.banner.classList.contains("visible")).toBe(true);
        expect(host.banner.textContent).toMatch(/cannot draw/);
    });
});
