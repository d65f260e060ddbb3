import { Client } from "./api.js";
import type { DatasetSummary } from "./model.js";
import type { SceneHost } from "./scene.js";
import { showBanner } from "./scene.js";
import { ViewController } from "./interactions.js";

function mustGet<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

// Same-origin by default; ?service=http://host:port points the page at a
// separately hosted engine.
function serviceBase(): string {
    return new URLSearchParams(window.location.search).get("service") ?? "";
}

async function openView(
    client: Client,
    host: SceneHost,
    ds: DatasetSummary,
    status: HTMLElement,
): Promise<ViewController> {
    const created = await client.createView(ds.dataset_id);
    return new ViewController(client, host, created, {
        onChange: (m) => {
            status.textContent =
                `${ds.name}: ${m.layout.kept_rows} rows kept, ` +
                `${m.layout.dropped_rows} dropped, version ${m.version}`;
        },
    });
}

async function init(): Promise<void> {
    const host: SceneHost = {
        container: mustGet("plot"),
        banner: mustGet("banner"),
        tooltip: mustGet("tooltip"),
    };
    const status = mustGet("status");
    const picker = mustGet<HTMLSelectElement>("datasets");
    const fileInput = mustGet<HTMLInputElement>("file");
    const uploadButton = mustGet<HTMLButtonElement>("upload");
    const client = new Client(serviceBase());

    const refresh = async (): Promise<DatasetSummary[]> => {
        const datasets = await client.listDatasets();
        picker.replaceChildren(
            ...datasets.map((d) => {
                const option = document.createElement("option");
                option.value = d.dataset_id;
                option.textContent = `${d.name} (${d.row_count} rows)`;
                return option;
            }),
        );
        return datasets;
    };

    let datasets: DatasetSummary[] = [];
    try {
        datasets = await refresh();
    } catch (e) {
        showBanner(host, `service unreachable at ${client.baseUrl || "this origin"}: ${e}`);
        return;
    }

    const open = (id: string) => {
        const ds = datasets.find((d) => d.dataset_id === id);
        if (!ds) return;
        openView(client, host, ds, status).catch((e) => showBanner(host, `could not open view: ${e}`));
    };

    picker.addEventListener("change", () => open(picker.value));

    uploadButton.addEventListener("click", async () => {
        const file = fileInput.files?.[0];
        if (!file) return;
        try {
            const ds = await client.uploadCsv(file.name, await file.text());
            datasets = await refresh();
            picker.value = ds.dataset_id;
            open(ds.dataset_id);
        } catch (e) {
            showBanner(host, `upload failed: ${e}`);
        }
    });

    if (datasets.length > 0) {
        picker.value = datasets[0].dataset_id;
        open(datasets[0].dataset_id);
    } else {
        status.textContent = "no datasets yet; upload a CSV to begin";
    }
}

init().catch((e) => console.error("boot failed", e));
