// Pure layout math shared by the panels; kept DOM-free so the unit tests can
// check the numbers directly.

export interface Box {
    x: number;
    y: number;
    w: number;
    h: number;
}

/** Map a rect from source-frame coordinates to the displayed player size. */
export function scaleRect(rect: Box, frameW: number, frameH: number,
                          viewW: number, viewH: number): Box {
    const sx = viewW / frameW;
    const sy = viewH / frameH;
    return {
        x: rect.x * sx,
        y: rect.y * sy,
        w: rect.w * sx,
        h: rect.h * sy,
    };
}

/** Serpentine grid cell for dot i: rows fill left-to-right, odd rows flow
 *  back right-to-left so the reading path zigzags down the panel. */
export function zigzagPosition(i: number, cols: number): { row: number; col: number } {
    const row = Math.floor(i / cols);
    const within = i % cols;
    const col = row % 2 === 0 ? within : cols - 1 - within;
    return { row, col };
}

export function rowLength(panelWidth: number, dotPitch: number): number {
    return Math.max(1, Math.floor(panelWidth / dotPitch));
}

/** Dot color ramp: single vermilion hue, score 5 renders light and washed
 *  out, 10 fully saturated; anything under the active threshold stays white.
 *  Documented stops: 5 -> hsl(14,60%,74%), 10 -> hsl(14,90%,48%). */
export function scoreColor(score: number, threshold = 5): string {
    if (score < threshold) {
        return "#ffffff";
    }
    const t = (Math.min(Math.max(score, 5), 10) - 5) / 5;
    const sat = 60 + 30 * t;
    const light = 74 - 26 * t;
    return `hsl(14, ${sat.toFixed(0)}%, ${light.toFixed(0)}%)`;
}

export function formatTime(seconds: number): string {
    const s = Math.max(0, Math.floor(seconds));
    const mm = String(Math.floor(s / 60)).padStart(2, "0");
    const ss = String(s % 60).padStart(2, "0");
    return `${mm}:${ss}`;
}

/** Index of the segment whose interval contains t, or -1. Later segments win
 *  when cues overlap, matching how the transcript is read. */
export function segmentAt(segments: { t_start: number; t_end: number }[],
                          t: number): number {
    let found = -1;
    for (let i = 0; i < segments.length; i++) {
        if (segments[i].t_start <= t && t < segments[i].t_end) {
            found = i;
        }
    }
    return found;
}
