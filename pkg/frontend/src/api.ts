import type {
    LevelGroup,
    Paper,
    SearchResult,
    ThemeDetail,
    ThemeRef,
    ThemeSummary,
} from "./types.js";

export class ApiError extends Error {
    constructor(public status: number, message: string) {
        super(message);
        this.name = "ApiError";
    }
}

/** Thin typed client over the read-only catalog endpoints. */
export class ApiClient {
    constructor(private base: string) {}

    private async get<T>(path: string): Promise<T> {
        const resp = await fetch(this.base + path);
        if (!resp.ok) {
            let message = `HTTP ${resp.status}`;
            try {
                const body = (await resp.json()) as { error?: string };
                if (body.error) message = body.error;
            } catch {
                // non-JSON error body; keep the status message
            }
            throw new ApiError(resp.status, message);
        }
        return (await resp.json()) as T;
    }

    tree(): Promise<LevelGroup[]> {
        return this.get("/api/tree");
    }

    treeLevel(level: number): Promise<ThemeSummary[]> {
        return this.get(`/api/tree?level=${level}`);
    }

    theme(level: number, index: number, offset = 0, limit = 25): Promise<ThemeDetail> {
        return this.get(`/api/themes/${level}/${index}?offset=${offset}&limit=${limit}`);
    }

    paper(key: string): Promise<Paper> {
        return this.get(`/api/papers/${encodeURIComponent(key)}`);
    }

    search(query: string, theme?: ThemeRef, limit = 50): Promise<SearchResult[]> {
        let path = `/api/search?q=${encodeURIComponent(query)}&limit=${limit}`;
        if (theme) path += `&theme=${theme.level}:${theme.index}`;
        return this.get(path);
    }
}
