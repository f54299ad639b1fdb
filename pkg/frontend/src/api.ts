// Typed client for the read-only project API. All paths are absolute so the
// bundle works both from the vite dev server (proxied) and mounted at /ui/.

export interface Placement {
    kind: "image" | "keyphrase";
    ref: string;
    style: Record<string, string>;
    x: number;
    y: number;
    w: number;
    h: number;
}

export interface Keyphrase {
    phrase: string;
    char_span: [number, number] | null;
}

export interface SegmentEntry {
    index: number;
    t_start: number;
    t_end: number;
    text: string;
    score: number;
    score_backend: string;
    keyphrases: Keyphrase[];
    prompt: string | null;
    image_asset: string | null;
    placements: Placement[];
    skip_reasons: string[];
}

export interface Manifest {
    schema_version: number;
    project_id: string;
    frame_width: number;
    frame_height: number;
    duration: number;
    threshold: number;
    segments: SegmentEntry[];
    generation: Record<string, unknown>;
}

export interface ProjectInfo {
    id: string;
    segments: number;
    duration: number;
    threshold: number;
}

async function getJson<T>(url: string): Promise<T> {
    const res = await fetch(url);
    if (!res.ok) {
        throw new Error(`GET ${url} -> ${res.status}`);
    }
    return (await res.json()) as T;
}

export function listProjects(): Promise<ProjectInfo[]> {
    return getJson("/api/projects");
}

export function fetchManifest(project: string, minScore?: number): Promise<Manifest> {
    const query = minScore ? `?min_score=${minScore}` : "";
    return getJson(`/api/projects/${encodeURIComponent(project)}/manifest${query}`);
}

/** Manifest asset paths look like "assets/images/seg_0000.png"; the asset
 *  route already roots at the project's assets directory. */
export function assetUrl(project: string, assetPath: string): string {
    const rel = assetPath.replace(/^assets\//, "");
    return `/assets/${encodeURIComponent(project)}/${rel}`;
}

export function frameUrl(project: string, index: number): string {
    const name = `frame_${String(index).padStart(6, "0")}.png`;
    return `/media/${encodeURIComponent(project)}/${name}`;
}

export function videoUrl(project: string): string {
    return `/media/${encodeURIComponent(project)}/source.mp4`;
}

/** Probe for an original video container; projects that only ship 1-fps
 *  frames fall back to the slideshow player. */
export async function hasSourceVideo(project: string): Promise<boolean> {
    try {
        const res = await fetch(videoUrl(project), {
            headers: { Range: "bytes=0-0" },
        });
        return res.status === 206 || res.status === 200;
    } catch {
        return false;
    }
}
