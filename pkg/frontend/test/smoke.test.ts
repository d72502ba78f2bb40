// UI smoke suite against a live fixture service: the API client and the
// view renderers are exercised end to end exactly as the browser uses
// them, minus the DOM.

import assert from "node:assert/strict";
import { after, before, test } from "node:test";
import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";

import { ApiClient, ApiError } from "../src/api.js";
import { parseRoute } from "../src/routes.js";
import {
    renderPaperView,
    renderSearchView,
    renderThemeView,
    renderTreeView,
} from "../src/render.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const serviceScript = path.join(here, "..", "..", "scripts", "fixture_service.py");

let child: ChildProcess;
let client: ApiClient;

before(async () => {
    child = spawn("python3", [serviceScript], { stdio: ["ignore", "pipe", "inherit"] });
    const base = await new Promise<string>((resolve, reject) => {
        const timer = setTimeout(() => reject(new Error("fixture service timed out")), 30_000);
        let buffer = "";
        child.stdout!.on("data", (chunk: Buffer) => {
            buffer += chunk.toString();
            const match = buffer.match(/READY (\S+)/);
            if (match) {
                clearTimeout(timer);
                resolve(match[1]);
            }
        });
        child.on("exit", (code) => reject(new Error(`fixture service exited: ${code}`)));
    });
    client = new ApiClient(base);
});

after(() => {
    child.kill();
});

test("tree view renders every top-level theme the API reports", async () => {
    const groups = await client.tree();
    const html = renderTreeView(groups);
    const top = groups[groups.length - 1];
    assert.equal(top.level, groups.length);
    for (const theme of top.themes) {
        assert.ok(html.includes(`href="#/theme/${theme.level}/${theme.index}"`));
        assert.ok(html.includes(theme.root_authority_key));
    }
    // ground level has the two camps
    assert.equal(groups[0].themes.length, 2);
});

test("theme view lists match the API response exactly", async () => {
    const detail = await client.theme(1, 0);
    const html = renderThemeView(detail);
    for (const entry of [...detail.authorities, ...detail.hubs]) {
        assert.ok(html.includes(`href="#/paper/${encodeURIComponent(entry.key)}"`));
    }
    for (const key of detail.members.keys) {
        assert.ok(html.includes(`>${key}</a>`));
    }
    assert.ok(html.includes(`Members (${detail.members.total})`));
});

test("paper breadcrumb navigates to themes that exist", async () => {
    const paper = await client.paper("A0");
    const html = renderPaperView(paper);
    const hrefs = [...html.matchAll(/href="(#\/theme\/[^"]+)"/g)].map((m) => m[1]);
    assert.ok(hrefs.length >= paper.theme_path.length);
    for (const step of paper.theme_path) {
        const href = `#/theme/${step.level}/${step.index}`;
        assert.ok(hrefs.includes(href), `breadcrumb missing ${href}`);
        const route = parseRoute(href);
        assert.equal(route.kind, "theme");
        if (route.kind === "theme") {
            const detail = await client.theme(route.level, route.index);
            assert.equal(detail.summary.level, step.level);
            assert.equal(detail.summary.index, step.index);
        }
    }
});

test("search round-trips a known title token", async () => {
    const results = await client.search("gluon");
    assert.equal(results.length, 1);
    assert.equal(results[0].key, "A0");
    const html = renderSearchView("gluon", results);
    assert.ok(html.includes('href="#/paper/A0"'));
    const paper = await client.paper(results[0].key);
    assert.ok(paper.title && paper.title.toLowerCase().includes("gluon"));
});

test("pagination walks the whole member list", async () => {
    const page1 = await client.theme(1, 1, 0, 2);
    assert.equal(page1.members.keys.length, 2);
    const page2 = await client.theme(1, 1, 2, 2);
    const seen = new Set([...page1.members.keys, ...page2.members.keys]);
    assert.equal(seen.size, page1.members.total);
    const beyond = await client.theme(1, 1, 99, 2);
    assert.equal(beyond.members.keys.length, 0);
});

test("unknown entities surface as ApiError 404", async () => {
    await assert.rejects(client.paper("no-such-paper"), (err: unknown) => {
        assert.ok(err instanceof ApiError);
        assert.equal(err.status, 404);
        return true;
    });
    await assert.rejects(client.theme(9, 9), (err: unknown) => {
        assert.ok(err instanceof ApiError);
        assert.equal(err.status, 404);
        return true;
    });
});
