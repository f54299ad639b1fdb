import { hasSourceVideo, listProjects, Manifest } from "./api";
import { segmentAt } from "./geometry";
import { renderOverlay } from "./overlay";
import { Player, SlideshowPlayer, VideoPlayer } from "./player";
import { renderSlider } from "./slider";
import { Store, ViewLoader } from "./state";
import { renderStoryboard } from "./storyboard";
import { renderTimeline } from "./timeline";
import { markActive, renderTranscript } from "./transcript";

export interface AppHandle {
    store: Store;
    player: Player;
    setMinScore(value: number): Promise<void>;
    seekTo(t: number, index: number): void;
}

function skeleton(root: HTMLElement): Record<string, HTMLElement> {
    root.innerHTML = `
      <header class="bar">
        <h1 id="title">speechvis</h1>
        <div id="slider"></div>
      </header>
      <main class="grid">
        <section class="stage" id="stage">
          <div class="overlay-layer" id="overlay"></div>
        </section>
        <aside class="side">
          <h2>timeline</h2>
          <div id="timeline"></div>
          <h2>transcript</h2>
          <div id="transcript"></div>
        </aside>
      </main>
      <footer>
        <h2>storyboard</h2>
        <div id="storyboard"></div>
      </footer>`;
    const ids = ["title", "slider", "stage", "overlay", "timeline",
                 "transcript", "storyboard"];
    const parts: Record<string, HTMLElement> = {};
    for (const id of ids) {
        parts[id] = root.querySelector<HTMLElement>(`#${id}`)!;
    }
    return parts;
}

export async function initApp(root: HTMLElement, projectId?: string): Promise<AppHandle> {
    const parts = skeleton(root);
    const projects = await listProjects();
    const fromQuery = new URLSearchParams(window.location.search).get("project");
    const project = projectId ?? fromQuery ?? projects[0]?.id;
    if (!project) {
        parts.title.textContent = "no projects found";
        throw new Error("no projects available");
    }

    const store = new Store(project);
    const loader = new ViewLoader(store);
    await loader.load(store.get().minScore);
    const view = store.get().view!;
    parts.title.textContent = `speechvis · ${project}`;

    const player: Player = (await hasSourceVideo(project))
        ? new VideoPlayer(project, view.duration)
        : new SlideshowPlayer(project, view.duration);
    parts.stage.insertBefore(player.element, parts.overlay);
    parts.stage.addEventListener("click", (e) => {
        // overlay bodies keep their own click behavior
        if ((e.target as HTMLElement).closest(".ov")) {
            return;
        }
        player.toggle();
    });

    let hover: number | null = null;

    const viewSize = (v: Manifest): [number, number] => [
        parts.stage.clientWidth || v.frame_width,
        parts.stage.clientHeight || v.frame_height,
    ];

    const syncOverlay = () => {
        const v = store.get().view;
        if (!v) {
            return;
        }
        const active = hover ?? segmentAt(v.segments, player.currentTime());
        const entry = v.segments.find((s) => s.index === active);
        const [w, h] = viewSize(v);
        renderOverlay(parts.overlay, entry ? entry.placements : [], project,
                      v.frame_width, v.frame_height, w, h);
    };

    const onHover = (index: number | null) => {
        hover = index;
        syncOverlay();
    };

    const seekTo = (t: number, index: number) => {
        player.seek(t);
        player.play();
        markActive(parts.transcript, index);
        syncOverlay();
    };

    const renderPanels = (v: Manifest) => {
        renderTimeline(parts.timeline, v.segments, {
            threshold: store.get().minScore,
            onSeek: seekTo,
            onHover,
        });
        renderStoryboard(parts.storyboard, v.segments, {
            project,
            onSeek: seekTo,
            onHover,
        });
        renderTranscript(parts.transcript, v.segments, { onSeek: seekTo });
        syncOverlay();
    };

    store.subscribe((s) => {
        if (s.view) {
            renderPanels(s.view);
        }
    });
    renderPanels(view);

    renderSlider(parts.slider, {
        initial: store.get().minScore,
        onChange: (value) => void loader.load(value),
    });

    player.onTime((t) => {
        const v = store.get().view;
        if (v) {
            markActive(parts.transcript, segmentAt(v.segments, t));
        }
        syncOverlay();
    });

    if (typeof ResizeObserver !== "undefined") {
        new ResizeObserver(() => {
            const v = store.get().view;
            if (v) {
                renderPanels(v);
            }
        }).observe(parts.stage);
    }

    return {
        store,
        player,
        setMinScore: (value) => loader.load(value),
        seekTo,
    };
}
