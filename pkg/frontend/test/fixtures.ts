import { vi } from "vitest";
import { Manifest, SegmentEntry } from "../src/api";

/** 10 segments, scores 1..10, generated assets for every score above the
 *  build threshold of 5 — mirrors what the pipeline emits for the bundled
 *  sample project. */
export function makeManifest(): Manifest {
    const segments: SegmentEntry[] = [];
    for (let i = 0; i < 10; i++) {
        const score = i + 1;
        const phrase = `topic ${i}`;
        const text = `spoken line ${i} mentions ${phrase} in passing`;
        const start = text.indexOf(phrase);
        const hasImage = score > 5;
        segments.push({
            index: i,
            t_start: 1.2 * i,
            t_end: 1.2 * (i + 1),
            text,
            score,
            score_backend: "offline-stub",
            keyphrases: [{ phrase, char_span: [start, start + phrase.length] }],
            prompt: hasImage ? `Illustration of: ${text}` : null,
            image_asset: hasImage ? `assets/images/seg_${String(i).padStart(4, "0")}.png` : null,
            placements: hasImage
                ? [
                    {
                        kind: "image",
                        ref: `assets/images/seg_${String(i).padStart(4, "0")}.png`,
                        style: { border: "white" },
                        x: 8 + i, y: 8, w: 64, h: 36,
                    },
                    {
                        kind: "keyphrase",
                        ref: phrase,
                        style: { color: "red" },
                        x: 16, y: 120, w: 80, h: 10,
                    },
                ]
                : [],
            skip_reasons: [],
        });
    }
    return {
        schema_version: 1,
        project_id: "sample",
        frame_width: 320,
        frame_height: 180,
        duration: 12.0,
        threshold: 5,
        segments,
        generation: {
            chat_backend: "offline-stub",
            image_backend: "placeholder",
            summary_backend: "offline-stub",
            global_summary: "",
            seed: 7,
            config_digest: "test-digest",
            template_version: 1,
            generated_at: "2026-08-25T00:00:00+00:00",
        },
    };
}

/** Same semantics as the server's min_score view: segments below the cutoff
 *  keep text/score/keyphrases but lose placements, asset, and prompt. */
export function filterView(manifest: Manifest, minScore: number): Manifest {
    return {
        ...manifest,
        segments: manifest.segments.map((seg) =>
            seg.score >= minScore
                ? seg
                : { ...seg, placements: [], image_asset: null, prompt: null }),
    };
}

export interface MockApi {
    calls: string[];
    delayFor: (url: string, ms: number) => void;
}

/** Installs a fetch stub for the project API; /media probes 404 so the app
 *  picks the slideshow player. */
export function mockApi(manifest: Manifest): MockApi {
    const calls: string[] = [];
    const delays = new Map<string, number>();

    const respond = (body: unknown, status = 200) => ({
        ok: status < 400,
        status,
        json: async () => body,
    });

    const handler = async (input: RequestInfo | URL) => {
        const url = String(input);
        calls.push(url);
        const wait = [...delays.entries()].find(([frag]) => url.includes(frag));
        if (wait) {
            await new Promise((r) => setTimeout(r, wait[1]));
        }
        if (url.startsWith("/api/projects/")) {
            const minScore = /min_score=(\d+)/.exec(url);
            const view = minScore ? filterView(manifest, Number(minScore[1])) : manifest;
            return respond(view);
        }
        if (url.startsWith("/api/projects")) {
            return respond([{
                id: manifest.project_id,
                segments: manifest.segments.length,
                duration: manifest.duration,
                threshold: manifest.threshold,
            }]);
        }
        return respond({ detail: `no route ${url}` }, 404);
    };

    vi.stubGlobal("fetch", handler as unknown as typeof fetch);
    return {
        calls,
        delayFor: (frag, ms) => delays.set(frag, ms),
    };
}

export function flush(times = 3): Promise<void> {
    let p = Promise.resolve();
    for (let i = 0; i < times; i++) {
        p = p.then(() => new Promise((r) => setTimeout(r, 0)));
    }
    return p;
}
