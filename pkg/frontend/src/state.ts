import { fetchManifest, Manifest } from "./api";

export interface HoverTarget {
    source: "dot" | "board";
    index: number;
}

export interface UiState {
    project: string;
    minScore: number;
    time: number;
    hover: HoverTarget | null;
    view: Manifest | null;
}

type Listener = (state: UiState) => void;

export class Store {
    private state: UiState;
    private listeners: Listener[] = [];

    constructor(project: string, minScore = 5) {
        this.state = { project, minScore, time: 0, hover: null, view: null };
    }

    get(): UiState {
        return this.state;
    }

    set(partial: Partial<UiState>): void {
        this.state = { ...this.state, ...partial };
        for (const fn of this.listeners) {
            fn(this.state);
        }
    }

    subscribe(fn: Listener): () => void {
        this.listeners.push(fn);
        return () => {
            this.listeners = this.listeners.filter((f) => f !== fn);
        };
    }
}

/** Fetches manifest views, discarding responses that arrive after a newer
 *  request was issued (slider scrubbing can overtake slow responses). */
export class ViewLoader {
    private generation = 0;

    constructor(private store: Store) {}

    async load(minScore: number): Promise<void> {
        const gen = ++this.generation;
        const view = await fetchManifest(this.store.get().project, minScore);
        if (gen !== this.generation) {
            return; // stale response, a newer load already started
        }
        this.store.set({ view, minScore });
    }
}
