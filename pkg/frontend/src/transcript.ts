import { Keyphrase, SegmentEntry } from "./api";
import { formatTime } from "./geometry";

export interface TranscriptOptions {
    onSeek: (t: number, index: number) => void;
}

/** Text nodes interleaved with red keyphrase spans at their char offsets.
 *  Unlocated phrases (null span) and overlaps with an earlier span are
 *  rendered as plain text. */
export function highlightSpans(text: string, keyphrases: Keyphrase[]): DocumentFragment {
    const spans = keyphrases
        .map((k) => k.char_span)
        .filter((s): s is [number, number] => s !== null)
        .sort((a, b) => a[0] - b[0]);
    const frag = document.createDocumentFragment();
    let cursor = 0;
    for (const [start, end] of spans) {
        if (start < cursor || end > text.length || start >= end) {
            continue;
        }
        if (start > cursor) {
            frag.appendChild(document.createTextNode(text.slice(cursor, start)));
        }
        const kp = document.createElement("span");
        kp.className = "kp";
        kp.textContent = text.slice(start, end);
        frag.appendChild(kp);
        cursor = end;
    }
    if (cursor < text.length) {
        frag.appendChild(document.createTextNode(text.slice(cursor)));
    }
    return frag;
}

export function renderTranscript(container: HTMLElement, segments: SegmentEntry[],
                                 opts: TranscriptOptions): void {
    container.textContent = "";
    container.classList.add("transcript");
    for (const seg of segments) {
        const row = document.createElement("div");
        row.className = "t-row";
        row.dataset.index = String(seg.index);
        const stamp = document.createElement("span");
        stamp.className = "t-stamp";
        stamp.textContent = formatTime(seg.t_start);
        const body = document.createElement("span");
        body.className = "t-text";
        body.appendChild(highlightSpans(seg.text, seg.keyphrases));
        row.append(stamp, body);
        row.addEventListener("click", () => opts.onSeek(seg.t_start, seg.index));
        container.appendChild(row);
    }
}

/** Move the active-row marker as playback progresses. */
export function markActive(container: HTMLElement, index: number): void {
    for (const row of container.querySelectorAll<HTMLElement>(".t-row")) {
        row.classList.toggle("active", row.dataset.index === String(index));
    }
}
