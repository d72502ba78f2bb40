// Hash-based routes so every view is a shareable deep link.

export type Route =
    | { kind: "tree" }
    | { kind: "theme"; level: number; index: number; offset: number }
    | { kind: "paper"; key: string }
    | { kind: "search"; query: string }
    | { kind: "notFound"; hash: string };

export function parseRoute(hash: string): Route {
    const clean = hash.replace(/^#\/?/, "");
    if (clean === "" || clean === "tree") return { kind: "tree" };
    const [path, rawQuery] = splitOnce(clean, "?");
    const parts = path.split("/");
    if (parts[0] === "theme" && parts.length === 3) {
        const level = Number(parts[1]);
        const index = Number(parts[2]);
        if (Number.isInteger(level) && Number.isInteger(index)) {
            const params = new URLSearchParams(rawQuery);
            const offset = Math.max(0, Number(params.get("offset") ?? 0) || 0);
            return { kind: "theme", level, index, offset };
        }
    }
    if (parts[0] === "paper" && parts.length >= 2) {
        return { kind: "paper", key: decodeURIComponent(parts.slice(1).join("/")) };
    }
    if (parts[0] === "search") {
        const params = new URLSearchParams(rawQuery);
        return { kind: "search", query: params.get("q") ?? "" };
    }
    return { kind: "notFound", hash };
}

function splitOnce(text: string, sep: string): [string, string] {
    const at = text.indexOf(sep);
    return at < 0 ? [text, ""] : [text.slice(0, at), text.slice(at + 1)];
}

export function treeHref(): string {
    return "#/tree";
}

export function themeHref(level: number, index: number, offset = 0): string {
    const base = `#/theme/${level}/${index}`;
    return offset > 0 ? `${base}?offset=${offset}` : base;
}

export function paperHref(key: string): string {
    return `#/paper/${encodeURIComponent(key)}`;
}

export function searchHref(query: string): string {
    return `#/search?q=${encodeURIComponent(query)}`;
}
