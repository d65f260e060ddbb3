import { describe, expect, it } from "vitest";
import type { NumericAxis } from "../src/model.js";
import { validateLayout, valueToY, yToValue } from "../src/model.js";
import { fixtureLayout, frame, numericAxis } from "./helpers.js";

describe("axis scale", () => {
    const f = frame();
    const axis = numericAxis("mpg", 60, 0, 9, [0, 3, 6, 9], [150, 200, 50]);

    it("maps the domain onto the inner band, low values at the bottom", () => {
        expect(valueToY(f, axis, 0)).toBeCloseTo(516, 9);
        expect(valueToY(f, axis, 9)).toBeCloseTo(42, 9);
        expect(valueToY(f, axis, 4.5)).toBeCloseTo(279, 9);
    });

    it("agrees with the boundary pixels the server computed", () => {
        axis.boundary_y.forEach((y, j) => {
            expect(valueToY(f, axis, axis.boundaries[j])).toBeCloseTo(y, 9);
        });
    });

    it("pixel to value and back stays within half a pixel", () => {
        for (let y = f.margin_top; y <= f.height - f.margin_bottom; y += 7.3) {
            const back = valueToY(f, axis, yToValue(f, axis, y));
            expect(Math.abs(back - y)).toBeLessThan(0.5);
        }
    });

    it("collapses a degenerate domain to the middle and inverts to lo", () => {
        const flat: NumericAxis = {
            name: "c",
            kind: "numeric",
            x: 0,
            domain: [5, 5],
            boundaries: [5, 5],
            boundary_y: [279, 279],
            clusters: [{ center: 5, radius: 0, count: 1, y: 279, y0: 279, y1: 279 }],
        };
        expect(valueToY(f, flat, 5)).toBeCloseTo(42 + 474 / 2, 9);
        expect(yToValue(f, flat, 100)).toBe(5);
    });
});

describe("validateLayout", () => {
    it("accepts the fixture", () => {
        expect(validateLayout(fixtureLayout())).toBe(true);
    });

    it("rejects things that are not layouts at all", () => {
        expect(validateLayout(null)).toBe(false);
        expect(validateLayout(42)).toBe(false);
        expect(validateLayout({})).toBe(false);
        expect(validateLayout([])).toBe(false);
    });

    it("rejects a frame with a missing margin", () => {
        const doc: any = structuredClone(fixtureLayout());
        delete doc.frame.margin_left;
        expect(validateLayout(doc)).toBe(false);
    });

    it("rejects a numeric axis whose boundary arrays disagree", () => {
        const doc: any = structuredClone(fixtureLayout());
        doc.axes[0].boundary_y.pop();
        expect(validateLayout(doc)).toBe(false);
    });

    it("rejects a numeric axis without a domain", () => {
        const doc: any = structuredClone(fixtureLayout());
        delete doc.axes[0].domain;
        expect(validateLayout(doc)).toBe(false);
    });

    it("rejects an unknown axis kind", () => {
        const doc: any = structuredClone(fixtureLayout());
        doc.axes[0].kind = "temporal";
        expect(validateLayout(doc)).toBe(false);
    });

    it("rejects a bundle with a broken path", () => {
        const doc: any = structuredClone(fixtureLayout());
        delete doc.pairs[0].bundles[0].path.cy2;
        expect(validateLayout(doc)).toBe(false);
    });

    it("rejects non-finite numbers smuggled in as strings", () => {
        const doc: any = structuredClone(fixtureLayout());
        doc.pairs[0].bundles[0].width = "12";
        expect(validateLayout(doc)).toBe(false);
    });
});
