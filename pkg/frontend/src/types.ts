// Response shapes of the catalog API, field for field.

export interface ThemeRef {
    level: number;
    index: number;
}

export interface ThemeSummary {
    level: number;
    index: number;
    size: number;
    root_authority_key: string;
    root_hub_key: string;
    parent: ThemeRef | null;
    children: ThemeRef[];
}

export interface LevelGroup {
    level: number;
    themes: ThemeSummary[];
}

export interface RankedEntry {
    key: string;
    score: number;
}

export interface MembersPage {
    offset: number;
    limit: number;
    total: number;
    keys: string[];
}

export interface ThemeDetail {
    summary: ThemeSummary;
    authorities: RankedEntry[];
    hubs: RankedEntry[];
    members: MembersPage;
}

export interface PaperLocal {
    la_key: string;
    lh_key: string;
    ra_key: string;
    rh_key: string;
}

export interface Paper {
    key: string;
    title: string | null;
    authors: string[];
    tag: string | null;
    theme_path: ThemeRef[];
    local: PaperLocal;
}

export interface SearchResult {
    key: string;
    title: string | null;
    match_count: number;
    theme_path: ThemeRef[];
}
