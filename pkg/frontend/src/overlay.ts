import { assetUrl, Placement } from "./api";
import { scaleRect } from "./geometry";

/** Rebuild the overlay layer for one segment's placements, mapped from
 *  source-frame coordinates to the current player size. The layer itself
 *  never intercepts clicks (pointer-events: none in CSS); only the overlay
 *  bodies do. */
export function renderOverlay(layer: HTMLElement, placements: Placement[],
                              project: string,
                              frameW: number, frameH: number,
                              viewW: number, viewH: number): void {
    layer.textContent = "";
    for (const p of placements) {
        const box = scaleRect(p, frameW, frameH, viewW, viewH);
        const node = document.createElement("div");
        node.className = `ov ov-${p.kind}`;
        node.style.left = `${box.x}px`;
        node.style.top = `${box.y}px`;
        node.style.width = `${box.w}px`;
        node.style.height = `${box.h}px`;
        if (p.kind === "image") {
            const img = document.createElement("img");
            img.src = assetUrl(project, p.ref);
            img.alt = "generated illustration";
            img.draggable = false;
            node.appendChild(img);
        } else {
            node.textContent = p.ref;
            node.style.fontSize = `${Math.max(8, box.h * 0.78)}px`;
            node.style.lineHeight = `${box.h}px`;
        }
        layer.appendChild(node);
    }
}
