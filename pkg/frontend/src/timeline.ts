import { SegmentEntry } from "./api";
import { rowLength, scoreColor, zigzagPosition } from "./geometry";

export interface TimelineOptions {
    threshold: number;
    dotPitch?: number;
    onSeek: (t: number, index: number) => void;
    onHover: (index: number | null) => void;
}

const DEFAULT_PITCH = 26;

/** Serpentine dot grid, one dot per segment in transcript order. Dots for
 *  scores at or above the active threshold are colored on the score ramp,
 *  the rest stay white. */
export function renderTimeline(container: HTMLElement, segments: SegmentEntry[],
                               opts: TimelineOptions): void {
    const pitch = opts.dotPitch ?? DEFAULT_PITCH;
    const width = container.clientWidth || pitch * 10;
    const cols = rowLength(width, pitch);
    container.textContent = "";
    container.classList.add("timeline");
    for (const seg of segments) {
        const { row, col } = zigzagPosition(seg.index, cols);
        const dot = document.createElement("button");
        dot.type = "button";
        dot.className = "dot";
        dot.dataset.index = String(seg.index);
        dot.dataset.score = String(seg.score);
        dot.style.left = `${col * pitch}px`;
        dot.style.top = `${row * pitch}px`;
        dot.style.backgroundColor = scoreColor(seg.score, opts.threshold);
        dot.title = `#${seg.index} score ${seg.score} @ ${seg.t_start.toFixed(1)}s`;
        dot.addEventListener("click", () => opts.onSeek(seg.t_start, seg.index));
        dot.addEventListener("mouseenter", () => opts.onHover(seg.index));
        dot.addEventListener("mouseleave", () => opts.onHover(null));
        container.appendChild(dot);
    }
    const rows = segments.length ? Math.floor((segments.length - 1) / cols) + 1 : 0;
    container.style.height = `${rows * pitch}px`;
}
