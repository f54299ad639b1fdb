import { frameUrl, videoUrl } from "./api";

export interface Player {
    readonly element: HTMLElement;
    readonly duration: number;
    currentTime(): number;
    playing(): boolean;
    seek(t: number): void;
    play(): void;
    pause(): void;
    toggle(): void;
    onTime(fn: (t: number) => void): void;
}

const TICK_MS = 100;

/** 1-fps frame slideshow with its own wall clock; stands in for the native
 *  player when a project ships only extracted frames. */
export class SlideshowPlayer implements Player {
    readonly element: HTMLElement;
    readonly duration: number;

    private img: HTMLImageElement;
    private time = 0;
    private shownFrame = -1;
    private timer: ReturnType<typeof setInterval> | null = null;
    private lastTick = 0;
    private listeners: ((t: number) => void)[] = [];

    constructor(private project: string, duration: number) {
        this.duration = duration;
        this.element = document.createElement("div");
        this.element.className = "player slideshow";
        this.img = document.createElement("img");
        this.img.className = "player-frame";
        this.img.draggable = false;
        this.element.appendChild(this.img);
        this.showFrame(0);
    }

    currentTime(): number {
        return this.time;
    }

    playing(): boolean {
        return this.timer !== null;
    }

    seek(t: number): void {
        this.time = Math.min(Math.max(t, 0), this.duration);
        this.showFrame(Math.floor(this.time));
        this.emit();
    }

    play(): void {
        if (this.timer !== null) {
            return;
        }
        if (this.time >= this.duration) {
            this.time = 0;
        }
        this.lastTick = performance.now();
        this.timer = setInterval(() => this.tick(), TICK_MS);
    }

    pause(): void {
        if (this.timer !== null) {
            clearInterval(this.timer);
            this.timer = null;
        }
    }

    toggle(): void {
        this.playing() ? this.pause() : this.play();
    }

    onTime(fn: (t: number) => void): void {
        this.listeners.push(fn);
    }

    private tick(): void {
        const now = performance.now();
        this.time += (now - this.lastTick) / 1000;
        this.lastTick = now;
        if (this.time >= this.duration) {
            this.time = this.duration;
            this.pause();
        }
        this.showFrame(Math.floor(this.time));
        this.emit();
    }

    private showFrame(index: number): void {
        const clamped = Math.max(0, Math.min(index, Math.ceil(this.duration) - 1));
        if (clamped !== this.shownFrame) {
            this.shownFrame = clamped;
            this.img.src = frameUrl(this.project, clamped);
        }
    }

    private emit(): void {
        for (const fn of this.listeners) {
            fn(this.time);
        }
    }
}

/** Thin adapter over a native <video> element for projects that include the
 *  original container. */
export class VideoPlayer implements Player {
    readonly element: HTMLElement;
    readonly duration: number;
    private video: HTMLVideoElement;
    private listeners: ((t: number) => void)[] = [];

    constructor(project: string, duration: number) {
        this.duration = duration;
        this.video = document.createElement("video");
        this.video.src = videoUrl(project);
        this.video.preload = "auto";
        this.video.className = "player-frame";
        this.element = document.createElement("div");
        this.element.className = "player native";
        this.element.appendChild(this.video);
        this.video.addEventListener("timeupdate", () => {
            for (const fn of this.listeners) {
                fn(this.video.currentTime);
            }
        });
    }

    currentTime(): number {
        return this.video.currentTime;
    }

    playing(): boolean {
        return !this.video.paused;
    }

    seek(t: number): void {
        this.video.currentTime = Math.min(Math.max(t, 0), this.duration);
        for (const fn of this.listeners) {
            fn(this.video.currentTime);
        }
    }

    play(): void {
        void this.video.play();
    }

    pause(): void {
        this.video.pause();
    }

    toggle(): void {
        this.playing() ? this.pause() : this.play();
    }

    onTime(fn: (t: number) => void): void {
        this.listeners.push(fn);
    }
}
