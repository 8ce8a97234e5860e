import { ResultRow } from "./schema.js";
import { FigureSpec, Series } from "./svg.js";

export const KINDS = ["required-snr", "bler-curve", "evm"] as const;
export type FigureKind = (typeof KINDS)[number];

function sortedUnique(values: number[]): number[] {
    return [...new Set(values)].sort((a, b) => a - b);
}

function groupSchemes(rows: ResultRow[]): Map<string, ResultRow[]> {
    const out = new Map<string, ResultRow[]>();
    for (const r of rows) {
        const list = out.get(r.scheme) ?? [];
        list.push(r);
        out.set(r.scheme, list);
    }
    return out;
}

// Required-SNR summary rows: scheme column carries "<scheme>/u<user>", the
// x axis is the power imbalance and snr_db holds the requirement (or NA at
// ambiguity points, which must render as gaps).
export function requiredSnrFigure(rows: ResultRow[]): FigureSpec {
    const series: Series[] = [];
    for (const [scheme, group] of groupSchemes(rows)) {
        const xs = sortedUnique(
            group.map((r) => r.delta_p_db).filter((v): v is number => v !== null),
        );
        series.push({
            label: scheme,
            points: xs.map((dp) => {
                const row = group.find((r) => r.delta_p_db === dp);
                return { x: dp, y: row?.snr_db ?? null };
            }),
        });
    }
    return {
        title: "Required SNR vs power imbalance",
        xLabel: "power imbalance (dB)",
        yLabel: "required SNR (dB)",
        series,
    };
}

// BLER sweep rows: one series per (scheme, user), log10 vertical axis.
export function blerCurveFigure(rows: ResultRow[]): FigureSpec {
    const series: Series[] = [];
    for (const [scheme, group] of groupSchemes(rows)) {
        const xs = sortedUnique(
            group.map((r) => r.snr_db).filter((v): v is number => v !== null),
        );
        for (const user of [1, 2] as const) {
            const key = user === 1 ? "bler_u1" : "bler_u2";
            const points = xs.map((snr) => {
                const row = group.find((r) => r.snr_db === snr);
                const bler = row ? (row[key] as number | null) : null;
                // zero BLER cannot be drawn on a log axis; treat as a gap
                return {
                    x: snr,
                    y: bler !== null && bler > 0 ? Math.log10(bler) : null,
                };
            });
            if (points.some((p) => p.y !== null)) {
                series.push({ label: `${scheme} u${user}`, points });
            }
        }
    }
    return {
        title: "Block error rate vs SNR",
        xLabel: "SNR (dB)",
        yLabel: "BLER",
        series,
        yTickFormat: (v) => `1e${v >= 0 ? "+" : ""}${Math.round(v)}`,
    };
}

// EVM rows: scheme column carries "<scheme>/<method>/mse=<v>"; one series
// per scheme label against SNR.
export function evmFigure(rows: ResultRow[]): FigureSpec {
    const series: Series[] = [];
    for (const [scheme, group] of groupSchemes(rows)) {
        const xs = sortedUnique(
            group.map((r) => r.snr_db).filter((v): v is number => v !== null),
        );
        series.push({
            label: scheme,
            points: xs.map((snr) => {
                const row = group.find((r) => r.snr_db === snr);
                return { x: snr, y: row?.evm_db ?? null };
            }),
        });
    }
    return {
        title: "Reconstruction EVM vs SNR",
        xLabel: "SNR (dB)",
        yLabel: "EVM (dB)",
        series,
    };
}

export function buildFigure(kind: FigureKind, rows: ResultRow[]): FigureSpec {
    switch (kind) {
        case "required-snr":
            return requiredSnrFigure(rows);
        case "bler-curve":
            return blerCurveFigure(rows);
        case "evm":
            return evmFigure(rows);
    }
}
