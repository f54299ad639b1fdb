// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";
import { renderStoryboard } from "../src/storyboard";
import { filterView, makeManifest } from "./fixtures";

describe("renderStoryboard", () => {
    let container: HTMLElement;
    const manifest = makeManifest();

    beforeEach(() => {
        container = document.createElement("div");
    });

    it("shows one thumbnail per image asset, in segment order", () => {
        renderStoryboard(container, manifest.segments, {
            project: "sample", onSeek: () => {}, onHover: () => {},
        });
        const items = [...container.querySelectorAll<HTMLElement>(".board-item")];
        expect(items.map((el) => el.dataset.index)).toEqual(
            ["5", "6", "7", "8", "9"]);
        const img = items[0].querySelector("img")!;
        expect(img.src).toContain("/assets/sample/images/seg_0005.png");
    });

    it("drops below-threshold items when fed a filtered view", () => {
        const view = filterView(manifest, 7);
        renderStoryboard(container, view.segments, {
            project: "sample", onSeek: () => {}, onHover: () => {},
        });
        const items = [...container.querySelectorAll<HTMLElement>(".board-item")];
        expect(items.map((el) => el.dataset.index)).toEqual(["6", "7", "8", "9"]);
    });

    it("click seeks, hover previews", () => {
        const onSeek = vi.fn();
        const onHover = vi.fn();
        renderStoryboard(container, manifest.segments, {
            project: "sample", onSeek, onHover,
        });
        const item = container.querySelector<HTMLElement>('[data-index="6"]')!;
        item.dispatchEvent(new MouseEvent("mouseenter"));
        item.click();
        expect(onHover).toHaveBeenCalledWith(6);
        const [t, index] = onSeek.mock.calls[0];
        expect(index).toBe(6);
        expect(t).toBeCloseTo(7.2, 6);
    });

    it("renders captions with timestamp and score", () => {
        renderStoryboard(container, manifest.segments, {
            project: "sample", onSeek: () => {}, onHover: () => {},
        });
        const caption = container.querySelector("figcaption")!;
        expect(caption.textContent).toBe("00:06 · 6");
    });

    it("empty view renders an empty strip", () => {
        renderStoryboard(container, filterView(manifest, 10).segments.slice(0, 5), {
            project: "sample", onSeek: () => {}, onHover: () => {},
        });
        expect(container.querySelectorAll(".board-item")).toHaveLength(0);
    });
});
