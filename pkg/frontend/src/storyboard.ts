import { assetUrl, SegmentEntry } from "./api";
import { formatTime } from "./geometry";

export interface StoryboardOptions {
    project: string;
    onSeek: (t: number, index: number) => void;
    onHover: (index: number | null) => void;
}

/** Thumbnail strip of the generated images in segment order. The server-side
 *  view filter already blanks image_asset below the active threshold, so
 *  membership here is simply "has an asset". */
export function renderStoryboard(container: HTMLElement, segments: SegmentEntry[],
                                 opts: StoryboardOptions): void {
    container.textContent = "";
    container.classList.add("storyboard");
    for (const seg of segments) {
        if (!seg.image_asset) {
            continue;
        }
        const item = document.createElement("figure");
        item.className = "board-item";
        item.dataset.index = String(seg.index);
        const img = document.createElement("img");
        img.src = assetUrl(opts.project, seg.image_asset);
        img.alt = seg.prompt ?? `segment ${seg.index}`;
        img.draggable = false;
        const caption = document.createElement("figcaption");
        caption.textContent = `${formatTime(seg.t_start)} · ${seg.score}`;
        item.append(img, caption);
        item.addEventListener("click", () => opts.onSeek(seg.t_start, seg.index));
        item.addEventListener("mouseenter", () => opts.onHover(seg.index));
        item.addEventListener("mouseleave", () => opts.onHover(null));
        container.appendChild(item);
    }
}
