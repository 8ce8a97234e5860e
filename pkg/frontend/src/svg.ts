// Minimal deterministic SVG plotting: fixed canvas, fixed palette, no
// randomness and no timestamps so identical inputs give identical bytes.

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { top: 40, right: 160, bottom: 52, left: 64 };

export const PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
];

export interface Scale {
    (v: number): number;
    domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
    let [d0, d1] = domain;
    if (d0 === d1) {
        // degenerate domain: pad so a single value sits mid-range
        d0 -= 1;
        d1 += 1;
    }
    const f = ((v: number) =>
        range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
    f.domain = [d0, d1];
    return f;
}

export function ticks(domain: [number, number], count = 6): number[] {
    const [lo, hi] = domain;
    const span = hi - lo;
    const step = Math.pow(10, Math.floor(Math.log10(span / count)));
    const err = (span / count) / step;
    const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
    const s = step * mult;
    const out: number[] = [];
    for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-9; v += s) {
        out.push(Number(v.toFixed(10)));
    }
    return out;
}

const esc = (s: string) =>
    s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");

export interface Series {
    label: string;
    // points in data coordinates; null y values break the polyline (NA gaps)
    points: { x: number; y: number | null }[];
}

export interface FigureSpec {
    title: string;
    xLabel: string;
    yLabel: string;
    series: Series[];
    // formats a y tick label (used to show log-scale ticks as 1e-2 etc.)
    yTickFormat?: (v: number) => string;
}

function num(v: number): string {
    return Number(v.toFixed(3)).toString();
}

export function renderFigure(spec: FigureSpec): string {
    const innerW: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
    const innerH: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
    const xs: number[] = [];
    const ys: number[] = [];
    for (const s of spec.series) {
        for (const p of s.points) {
            xs.push(p.x);
            if (p.y !== null) ys.push(p.y);
        }
    }
    const xDomain: [number, number] =
        xs.length > 0 ? [Math.min(...xs), Math.max(...xs)] : [0, 1];
    const yDomain: [number, number] =
        ys.length > 0 ? [Math.min(...ys), Math.max(...ys)] : [0, 1];
    const x = linearScale(xDomain, innerW);
    const y = linearScale(yDomain, innerH);
    const fmt = spec.yTickFormat ?? num;

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
            `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
    );
    parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
    parts.push(
        `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`,
    );

    // axes
    parts.push(
        `<line class="axis" x1="${innerW[0]}" y1="${innerH[0]}" x2="${innerW[1]}" y2="${innerH[0]}" stroke="black"/>`,
    );
    parts.push(
        `<line class="axis" x1="${innerW[0]}" y1="${innerH[0]}" x2="${innerW[0]}" y2="${innerH[1]}" stroke="black"/>`,
    );
    for (const t of ticks(x.domain)) {
        const px = num(x(t));
        parts.push(
            `<line class="tick" x1="${px}" y1="${innerH[0]}" x2="${px}" y2="${innerH[0] + 5}" stroke="black"/>`,
        );
        parts.push(
            `<text x="${px}" y="${innerH[0] + 18}" text-anchor="middle">${num(t)}</text>`,
        );
    }
    for (const t of ticks(y.domain)) {
        const py = num(y(t));
        parts.push(
            `<line class="tick" x1="${innerW[0] - 5}" y1="${py}" x2="${innerW[0]}" y2="${py}" stroke="black"/>`,
        );
        parts.push(
            `<text x="${innerW[0] - 8}" y="${py}" text-anchor="end" dominant-baseline="middle">${esc(fmt(t))}</text>`,
        );
    }
    parts.push(
        `<text x="${(innerW[0] + innerW[1]) / 2}" y="${HEIGHT - 12}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
    );
    parts.push(
        `<text x="18" y="${(innerH[0] + innerH[1]) / 2}" text-anchor="middle" ` +
            `transform="rotate(-90 18 ${(innerH[0] + innerH[1]) / 2})">${esc(spec.yLabel)}</text>`,
    );

    // series: polylines split at null y (NA gaps) plus one marker per point
    spec.series.forEach((s, si) => {
        const color = PALETTE[si % PALETTE.length];
        const segments: string[][] = [[]];
        for (const p of s.points) {
            if (p.y === null) {
                if (segments[segments.length - 1].length > 0) segments.push([]);
            } else {
                segments[segments.length - 1].push(`${num(x(p.x))},${num(y(p.y))}`);
            }
        }
        for (const seg of segments) {
            if (seg.length < 2) continue;
            parts.push(
                `<polyline class="series" fill="none" stroke="${color}" stroke-width="1.5" points="${seg.join(" ")}"/>`,
            );
        }
        for (const p of s.points) {
            if (p.y === null) continue;
            parts.push(
                `<circle class="marker" cx="${num(x(p.x))}" cy="${num(y(p.y))}" r="3" fill="${color}"/>`,
            );
        }
        const ly = MARGIN.top + 16 * si;
        parts.push(
            `<line class="legend" x1="${WIDTH - MARGIN.right + 10}" y1="${ly}" x2="${WIDTH - MARGIN.right + 30}" y2="${ly}" stroke="${color}" stroke-width="1.5"/>`,
        );
        parts.push(
            `<text x="${WIDTH - MARGIN.right + 34}" y="${ly + 4}">${esc(s.label)}</text>`,
        );
    });

    parts.push("</svg>");
    return parts.join("\n") + "\n";
}
