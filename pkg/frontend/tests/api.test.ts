import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiError, Client } from "../src/api.js";
import { fixtureLayout, jsonResponse } from "./helpers.js";

afterEach(() => {
    vi.unstubAllGlobals();
});

describe("Client", () => {
    it("uploads csv with the dataset name header", async () => {
        const fetchMock = vi.fn(async () =>
            jsonResponse(201, { dataset_id: "d1", name: "cars", row_count: 2, columns: [] }),
        );
        vi.stubGlobal("fetch", fetchMock);
        const ds = await new Client("http://svc").uploadCsv("cars", "a,b\n1,2\n");
        expect(ds.dataset_id).toBe("d1");
        const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
        expect(url).toBe("http://svc/datasets");
        expect(init.method).toBe("POST");
        expect((init.headers as Record<string, string>)["x-dataset-name"]).toBe("cars");
        expect(init.body).toContain("a,b");
    });

    it("sends the patch envelope the service expects", async () => {
        const fetchMock = vi.fn(async () =>
            jsonResponse(200, { view_id: "v1", version: 2, layout: fixtureLayout() }),
        );
        vi.stubGlobal("fetch", fetchMock);
        const r = await new Client("http://svc").patchView("v1", 1, "move_boundary", {
            axis: "mpg",
            boundary_index: 1,
            value: 2,
        });
        expect(r.version).toBe(2);
        const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
        expect(url).toBe("http://svc/views/v1");
        expect(init.method).toBe("PATCH");
        expect(JSON.parse(init.body as string)).toEqual({
            version: 1,
            op: "move_boundary",
            args: { axis: "mpg", boundary_index: 1, value: 2 },
        });
    });

    it("folds the layout GET back into view/version/layout", async () => {
        const layout = fixtureLayout();
        vi.stubGlobal(
            "fetch",
            vi.fn(async () => jsonResponse(200, { view_id: "v1", version: 3, ...layout })),
        );
        const r = await new Client().getLayout("v1");
        expect(r.view_id).toBe("v1");
        expect(r.version).toBe(3);
        expect(r.layout.axes.length).toBe(2);
        expect("view_id" in r.layout).toBe(false);
        expect("version" in r.layout).toBe(false);
    });

    it("raises ApiError with the envelope fields on 409", async () => {
        vi.stubGlobal(
            "fetch",
            vi.fn(async () =>
                jsonResponse(409, {
                    error: "VersionConflict",
                    detail: "view is at version 4, patch cited 2",
                    current_version: 4,
                }),
            ),
        );
        const err: ApiError = await new Client()
            .patchView("v1", 2, "move_boundary", {})
            .then(() => {
                throw new Error("expected a rejection");
            })
            .catch((e) => e);
        expect(err).toBeInstanceOf(ApiError);
        expect(err.status).toBe(409);
        expect(err.conflict).toBe(true);
        expect(err.code).toBe("VersionConflict");
        expect(err.currentVersion).toBe(4);
        expect(err.message).toContain("version 4");
    });

    it("carries 422 rejections without a current version", async () => {
        vi.stubGlobal(
            "fetch",
            vi.fn(async () =>
                jsonResponse(422, { error: "BoundaryCollision", detail: "too close" }),
            ),
        );
        const err: ApiError = await new Client()
            .patchView("v1", 1, "move_boundary", {})
            .catch((e) => e);
        expect(err.status).toBe(422);
        expect(err.conflict).toBe(false);
        expect(err.code).toBe("BoundaryCollision");
        expect(err.currentVersion).toBeUndefined();
    });

    it("survives non-JSON error bodies", async () => {
        vi.stubGlobal(
            "fetch",
            vi.fn(async () => new Response("boom", { status: 500, statusText: "Internal Server Error" })),
        );
        const err: ApiError = await new Client().listDatasets().catch((e) => e);
        expect(err.status).toBe(500);
        expect(err.code).toBe("HTTP 500");
    });

    it("wraps network failures as status 0", async () => {
        vi.stubGlobal(
            "fetch",
            vi.fn(async () => {
                throw new TypeError("fetch failed");
            }),
        );
        const err: ApiError = await new Client().listDatasets().catch((e) => e);
        expect(err).toBeInstanceOf(ApiError);
        expect(err.status).toBe(0);
        expect(err.code).toBe("NetworkError");
    });
});
