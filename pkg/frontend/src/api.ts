import type { DatasetSummary, Layout, PatchOp, ViewResponse } from "./model.js";

/** Options forwarded to the view-creation endpoint; server defaults apply for anything omitted. */
export interface CreateViewOptions {
    axes?: string[];
    bins?: number | Record<string, number>;
    boundaries?: Record<string, number[]>;
    w_max?: number;
    anomaly_threshold?: number;
    curve_tension?: number;
}

/**
 * Any non-2xx response, carrying the service's error envelope
 * (`{error, detail}` plus `current_version` on a version conflict).
 * Network failures surface as status 0 so callers have one error type.
 */
export class ApiError extends Error {
    constructor(
        public readonly status: number,
        public readonly code: string,
        detail: string,
        public readonly currentVersion?: number,
    ) {
        super(detail);
        this.name = "ApiError";
    }

    get conflict(): boolean {
        return this.status === 409;
    }
}

export class Client {
    constructor(public readonly baseUrl: string = "") {}

    private async send<T>(path: string, init?: RequestInit): Promise<T> {
        let res: Response;
        try {
            res = await fetch(this.baseUrl + path, init);
        } catch (e) {
            throw new ApiError(0, "NetworkError", `request to ${path} failed: ${e}`);
        }
        if (!res.ok) {
            let body: any = null;
            try {
                body = await res.json();
            } catch {
                // non-JSON error page; fall back to the status line
            }
            throw new ApiError(
                res.status,
                body?.error ?? `HTTP ${res.status}`,
                body?.detail ?? res.statusText,
                body?.current_version,
            );
        }
        return res.json() as Promise<T>;
    }

    uploadCsv(name: string, text: string): Promise<DatasetSummary> {
        return this.send("/datasets", {
            method: "POST",
            headers: { "content-type": "text/csv", "x-dataset-name": name },
            body: text,
        });
    }

    listDatasets(): Promise<DatasetSummary[]> {
        return this.send("/datasets");
    }

    createView(datasetId: string, options: CreateViewOptions = {}): Promise<ViewResponse> {
        return this.send(`/datasets/${datasetId}/views`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(options),
        });
    }

    /** The layout GET spreads the layout beside view_id/version; fold it back into one shape. */
    async getLayout(viewId: string): Promise<ViewResponse> {
        const doc = await this.send<{ view_id: string; version: number } & Layout>(
            `/views/${viewId}/layout`,
        );
        const { view_id, version, ...layout } = doc;
        return { view_id, version, layout: layout as Layout };
    }

    patchView(
        viewId: string,
        version: number,
        op: PatchOp,
        args: Record<string, unknown>,
    ): Promise<ViewResponse> {
        return this.send(`/views/${viewId}`, {
            method: "PATCH",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ version, op, args }),
        });
    }
}
