import { describe, expect, it } from "vitest";
import { COLUMNS, parseResults } from "../src/schema.js";
import { blerCurveFigure, buildFigure, evmFigure, requiredSnrFigure } from "../src/figures.js";
import { renderFigure } from "../src/svg.js";

const HEADER = COLUMNS.join(",");

function csv(rows: string[]): string {
    return [HEADER, ...rows].join("\n") + "\n";
}

function requiredSnrRow(scheme: string, dp: number, snr: string): string {
    return `${scheme},${dp},${snr},NA,NA,NA,NA,NA,NA,NA,NA,user2-first,7`;
}

function sweepRow(scheme: string, snr: number, bler1: number, bler2: number): string {
    return (
        `${scheme},0,${snr},1000,${Math.round(bler1 * 1000)},` +
        `${Math.round(bler2 * 1000)},${bler1},${bler2},0.001,0.002,NA,user2-first,7`
    );
}

function evmRow(scheme: string, snr: number, evm: number): string {
    return `${scheme},0,${snr},200,NA,NA,NA,NA,NA,NA,${evm},user2-first,7`;
}

function count(svg: string, cls: string): number {
    return (svg.match(new RegExp(`class="${cls}"`, "g")) ?? []).length;
}

describe("requiredSnrFigure", () => {
    it("renders NA requirements as gaps in the series", () => {
        const rows = parseResults(
            csv([
                requiredSnrRow("waveform-domain/u1", -5, "12.5"),
                requiredSnrRow("waveform-domain/u1", -1.25, "NA"),
                requiredSnrRow("waveform-domain/u1", 0, "11.0"),
                requiredSnrRow("waveform-domain/u1", 2, "10.5"),
            ]),
        );
        const fig = requiredSnrFigure(rows);
        expect(fig.series).toHaveLength(1);
        expect(fig.series[0].points.map((p) => p.y)).toEqual([12.5, null, 11.0, 10.5]);
        const svg = renderFigure(fig);
        // the NA point splits the line: only the two-point tail segment is
        // long enough to draw, the lone leading point has no polyline
        expect(count(svg, "series")).toBe(1);
        expect(count(svg, "marker")).toBe(3);
    });

    it("keeps one series per scheme/user label", () => {
        const rows = parseResults(
            csv([
                requiredSnrRow("power-domain/u1", 0, "14"),
                requiredSnrRow("power-domain/u2", 0, "11"),
                requiredSnrRow("waveform-domain/u1", 0, "12"),
            ]),
        );
        const fig = requiredSnrFigure(rows);
        expect(fig.series.map((s) => s.label).sort()).toEqual([
            "power-domain/u1",
            "power-domain/u2",
            "waveform-domain/u1",
        ]);
    });
});

describe("blerCurveFigure", () => {
    const rows = parseResults(
        csv([
            sweepRow("power-domain", 8, 0.2, 0.3),
            sweepRow("power-domain", 10, 0.05, 0.08),
            sweepRow("power-domain", 12, 0.01, 0.02),
        ]),
    );

    it("produces one log10 series per user", () => {
        const fig = blerCurveFigure(rows);
        expect(fig.series.map((s) => s.label)).toEqual([
            "power-domain u1",
            "power-domain u2",
        ]);
        expect(fig.series[0].points[2].y).toBeCloseTo(Math.log10(0.01));
        expect(fig.yTickFormat?.(-2)).toBe("1e-2");
    });

    it("draws three markers per series", () => {
        const svg = renderFigure(blerCurveFigure(rows));
        expect(count(svg, "series")).toBe(2);
        expect(count(svg, "marker")).toBe(6);
    });

    it("treats zero BLER as a gap rather than -Infinity", () => {
        const zero = parseResults(
            csv([sweepRow("power-domain", 8, 0.2, 0), sweepRow("power-domain", 10, 0.1, 0)]),
        );
        const fig = blerCurveFigure(zero);
        // the all-zero u2 series is dropped entirely
        expect(fig.series.map((s) => s.label)).toEqual(["power-domain u1"]);
    });
});

describe("evmFigure", () => {
    it("groups by the scheme/method/mse label", () => {
        const rows = parseResults(
            csv([
                evmRow("waveform-domain/hard/mse=0", 4, -8.1),
                evmRow("waveform-domain/hard/mse=0", 7, -10.2),
                evmRow("waveform-domain/soft/mse=0", 4, -9.0),
                evmRow("waveform-domain/soft/mse=0", 7, -11.5),
            ]),
        );
        const fig = evmFigure(rows);
        expect(fig.series.map((s) => s.label)).toEqual([
            "waveform-domain/hard/mse=0",
            "waveform-domain/soft/mse=0",
        ]);
        expect(fig.series[1].points.map((p) => p.y)).toEqual([-9.0, -11.5]);
    });
});

describe("buildFigure", () => {
    it("renders empty axes for a header-only file without failing", () => {
        const rows = parseResults(HEADER + "\n");
        for (const kind of ["required-snr", "bler-curve", "evm"] as const) {
            const svg = renderFigure(buildFigure(kind, rows));
            expect(count(svg, "axis")).toBe(2);
            expect(count(svg, "series")).toBe(0);
            expect(count(svg, "marker")).toBe(0);
        }
    });

    it("is byte deterministic", () => {
        const rows = parseResults(
            csv([sweepRow("power-domain", 8, 0.2, 0.3), sweepRow("power-domain", 10, 0.05, 0.08)]),
        );
        const a = renderFigure(buildFigure("bler-curve", rows));
        const b = renderFigure(buildFigure("bler-curve", rows));
        expect(a).toBe(b);
        expect(a).toContain("</svg>");
        expect(a).not.toMatch(/\d{4}-\d{2}-\d{2}/);
    });
});
