// Pure view rendering: API payloads in, HTML strings out. Keeping these
// free of DOM and fetch calls lets the test suite assert on exact output.

import type {
    LevelGroup,
    Paper,
    SearchResult,
    ThemeDetail,
    ThemeRef,
    ThemeSummary,
} from "./types.js";
import { paperHref, themeHref, treeHref } from "./routes.js";

export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

function themeLabel(ref: ThemeRef): string {
    return `L${ref.level}·T${ref.index}`;
}

/** Breadcrumb of a paper's theme path, ground theme first, each crumb a link. */
export function renderBreadcrumb(path: ThemeRef[]): string {
    if (path.length === 0) return "";
    const crumbs = path.map(
        (ref) =>
            `<a class="crumb" href="${themeHref(ref.level, ref.index)}">${themeLabel(ref)}</a>`,
    );
    return `<nav class="breadcrumb">${crumbs.join(" &rsaquo; ")}</nav>`;
}

export function renderSearchBox(query = ""): string {
    return (
        `<form id="search-form" action="">` +
        `<input id="search-input" type="search" placeholder="search titles and authors" ` +
        `value="${escapeHtml(query)}">` +
        `<button type="submit">Search</button></form>`
    );
}

function themeCard(theme: ThemeSummary): string {
    return (
        `<a class="theme-card" href="${themeHref(theme.level, theme.index)}">` +
        `<span class="theme-name">${themeLabel(theme)}</span>` +
        `<span class="theme-size">${theme.size} papers</span>` +
        `<span class="theme-roots">root authority ${escapeHtml(theme.root_authority_key)}` +
        ` · root hub ${escapeHtml(theme.root_hub_key)}</span></a>`
    );
}

export function renderTreeView(groups: LevelGroup[]): string {
    if (groups.length === 0 || groups.every((g) => g.themes.length === 0)) {
        return `<section class="empty">The catalog is empty.</section>`;
    }
    const sections = [...groups]
        .sort((a, b) => b.level - a.level)
        .map(
            (group) =>
                `<section class="level" data-level="${group.level}">` +
                `<h2>Level ${group.level} — ${group.themes.length} themes</h2>` +
                `<div class="theme-grid">${group.themes.map(themeCard).join("")}</div></section>`,
        );
    return `<h1><a href="${treeHref()}">Theme tree</a></h1>` + sections.join("");
}

function rankedList(title: string, entries: { key: string; score: number }[]): string {
    const items = entries
        .map(
            (e) =>
                `<li><a href="${paperHref(e.key)}">${escapeHtml(e.key)}</a>` +
                `<span class="score">${e.score}</span></li>`,
        )
        .join("");
    return `<section class="ranked"><h3>${title}</h3><ol>${items}</ol></section>`;
}

export function renderThemeView(detail: ThemeDetail): string {
    const s = detail.summary;
    const parent = s.parent
        ? `<a href="${themeHref(s.parent.level, s.parent.index)}">up to ${themeLabel(s.parent)}</a>`
        : `<a href="${treeHref()}">up to the tree</a>`;
    const children = s.children.length
        ? `<p class="children">subthemes: ${s.children
              .map((c) => `<a href="${themeHref(c.level, c.index)}">${themeLabel(c)}</a>`)
              .join(" ")}</p>`
        : "";
    const m = detail.members;
    const prev =
        m.offset > 0
            ? `<a class="page" href="${themeHref(s.level, s.index, Math.max(0, m.offset - m.limit))}">&larr; previous</a>`
            : `<span class="page disabled">&larr; previous</span>`;
    const next =
        m.offset + m.limit < m.total
            ? `<a class="page" href="${themeHref(s.level, s.index, m.offset + m.limit)}">next &rarr;</a>`
            : `<span class="page disabled">next &rarr;</span>`;
    const members = m.keys
        .map((k) => `<li><a href="${paperHref(k)}">${escapeHtml(k)}</a></li>`)
        .join("");
    return (
        `<h1>${themeLabel(s)} <span class="theme-size">${s.size} papers</span></h1>` +
        `<p class="nav">${parent}</p>` +
        children +
        rankedList("Authorities", detail.authorities) +
        rankedList("Hubs", detail.hubs) +
        `<section class="members"><h3>Members (${m.total})</h3><ul>${members}</ul>` +
        `<p class="pager">${prev} ${next}</p></section>`
    );
}

export function renderPaperView(paper: Paper): string {
    const title = paper.title ? escapeHtml(paper.title) : "(no title on record)";
    const authors = paper.authors.length
        ? `<p class="authors">${paper.authors.map(escapeHtml).join(", ")}</p>`
        : "";
    const tag = paper.tag ? `<span class="tag">${escapeHtml(paper.tag)}</span>` : "";
    const local = paper.local;
    const localList = (
        [
            ["local authority", local.la_key],
            ["local hub", local.lh_key],
            ["root authority", local.ra_key],
            ["root hub", local.rh_key],
        ] as const
    )
        .map(([label, key]) => `<li>${label}: <a href="${paperHref(key)}">${escapeHtml(key)}</a></li>`)
        .join("");
    return (
        renderBreadcrumb(paper.theme_path) +
        `<h1>${escapeHtml(paper.key)} ${tag}</h1>` +
        `<p class="title">${title}</p>` +
        authors +
        `<section class="local"><h3>Neighborhood</h3><ul>${localList}</ul></section>`
    );
}

export function renderSearchView(query: string, results: SearchResult[]): string {
    if (query.trim() === "") {
        return renderSearchBox() + `<section class="empty">Type a query to search the catalog.</section>`;
    }
    if (results.length === 0) {
        return (
            renderSearchBox(query) +
            `<section class="empty">No results for <b>${escapeHtml(query)}</b>.</section>`
        );
    }
    const rows = results
        .map(
            (r) =>
                `<li class="result"><a href="${paperHref(r.key)}">${escapeHtml(r.key)}</a>` +
                `<span class="title">${r.title ? escapeHtml(r.title) : ""}</span>` +
                renderBreadcrumb(r.theme_path) +
                `</li>`,
        )
        .join("");
    return (
        renderSearchBox(query) +
        `<section class="results"><h2>${results.length} result(s) for ` +
        `<b>${escapeHtml(query)}</b></h2><ul>${rows}</ul></section>`
    );
}

export function renderNotFound(what: string): string {
    return (
        `<section class="error"><h2>Not found</h2>` +
        `<p>${escapeHtml(what)}</p><p><a href="${treeHref()}">back to the tree</a></p></section>`
    );
}

export function renderError(message: string): string {
    return (
        `<section class="error"><h2>Something went wrong</h2>` +
        `<p>${escapeHtml(message)}</p></section>`
    );
}
