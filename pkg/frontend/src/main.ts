// Browser entry point: resolve the API base, route on the hash, render.

import { ApiClient, ApiError } from "./api.js";
import { parseRoute, searchHref } from "./routes.js";
import {
    renderError,
    renderNotFound,
    renderSearchBox,
    renderPaperView,
    renderSearchView,
    renderThemeView,
    renderTreeView,
} from "./render.js";

function apiBase(): string {
    const fromQuery = new URLSearchParams(window.location.search).get("api");
    if (fromQuery) return fromQuery;
    const meta = document.querySelector('meta[name="eqrank-api-base"]');
    const fromMeta = meta?.getAttribute("content");
    if (fromMeta) return fromMeta;
    return "http://127.0.0.1:8080";
}

const client = new ApiClient(apiBase());
const app = document.getElementById("app") as HTMLElement;
let generation = 0; // last-write-wins across overlapping fetches

async function show(): Promise<void> {
    const ticket = ++generation;
    const route = parseRoute(window.location.hash);
    let html: string;
    try {
        switch (route.kind) {
            case "tree":
                html = renderSearchBox() + renderTreeView(await client.tree());
                break;
            case "theme":
                html = renderThemeView(await client.theme(route.level, route.index, route.offset));
                break;
            case "paper":
                html = renderPaperView(await client.paper(route.key));
                break;
            case "search":
                html = renderSearchView(route.query, route.query ? await client.search(route.query) : []);
                break;
            default:
                html = renderNotFound(`no such view: ${route.hash}`);
        }
    } catch (err) {
        if (err instanceof ApiError && err.status === 404) {
            html = renderNotFound(err.message);
        } else {
            html = renderError(err instanceof Error ? err.message : String(err));
        }
    }
    if (ticket === generation) {
        app.innerHTML = html;
    }
}

document.addEventListener("submit", (event) => {
    const form = event.target as HTMLElement;
    if (form.id === "search-form") {
        event.preventDefault();
        const input = document.getElementById("search-input") as HTMLInputElement;
        window.location.hash = searchHref(input.value);
    }
});

window.addEventListener("hashchange", () => void show());
void show();
