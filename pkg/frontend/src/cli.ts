#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { parseResults, SchemaError } from "./schema.js";
import { buildFigure, FigureKind, KINDS } from "./figures.js";
import { renderFigure } from "./svg.js";

export function plot(inPath: string, kind: FigureKind, outPath: string): void {
    const text = readFileSync(inPath, "utf8");
    const rows = parseResults(text);
    const svg = renderFigure(buildFigure(kind, rows));
    writeFileSync(outPath, svg);
}

export async function main(argv: string[]): Promise<number> {
    const args = await yargs(argv)
        .command("plot", "render a figure from a result CSV", (y) =>
            y
                .option("in", { type: "string", demandOption: true, describe: "input CSV path" })
                .option("kind", {
                    choices: KINDS,
                    demandOption: true,
                    describe: "figure kind",
                })
                .option("out", { type: "string", demandOption: true, describe: "output SVG path" }),
        )
        .demandCommand(1)
        .strict()
        .parse();
    try {
        plot(args.in as string, args.kind as FigureKind, args.out as string);
    } catch (err) {
        if (err instanceof SchemaError) {
            console.error(`schema error: ${err.message}`);
            return 2;
        }
        throw err;
    }
    return 0;
}

const isDirectRun =
    process.argv[1] !== undefined &&
    import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectRun) {
    main(hideBin(process.argv)).then((code) => {
        process.exitCode = code;
    });
}
