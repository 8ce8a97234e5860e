import Papa from "papaparse";

// Fixed column order of the simulator's result CSVs. Anything else is a
// schema error; downstream figures rely on this exact contract.
export const COLUMNS = [
    "scheme",
    "delta_p_db",
    "snr_db",
    "trials",
    "blkerr_u1",
    "blkerr_u2",
    "bler_u1",
    "bler_u2",
    "ber_u1",
    "ber_u2",
    "evm_db",
    "decode_order",
    "seed",
] as const;

export type ColumnName = (typeof COLUMNS)[number];

const STRING_COLUMNS: ReadonlySet<ColumnName> = new Set(["scheme", "decode_order"]);

export interface ResultRow {
    scheme: string;
    delta_p_db: number | null;
    snr_db: number | null;
    trials: number | null;
    blkerr_u1: number | null;
    blkerr_u2: number | null;
    bler_u1: number | null;
    bler_u2: number | null;
    ber_u1: number | null;
    ber_u2: number | null;
    evm_db: number | null;
    decode_order: string;
    seed: number | null;
}

export class SchemaError extends Error {}

export function parseResults(csvText: string): ResultRow[] {
    const parsed = Papa.parse<string[]>(csvText.trim(), { delimiter: "," });
    if (parsed.errors.length > 0) {
        throw new SchemaError(`CSV parse failure: ${parsed.errors[0].message}`);
    }
    const rows = parsed.data.filter((r) => !(r.length === 1 && r[0] === ""));
    if (rows.length === 0) {
        throw new SchemaError("empty input: missing header row");
    }
    const header = rows[0];
    if (header.length !== COLUMNS.length) {
        throw new SchemaError(
            `expected ${COLUMNS.length} columns, got ${header.length}`,
        );
    }
    for (let i = 0; i < COLUMNS.length; i++) {
        if (header[i] !== COLUMNS[i]) {
            throw new SchemaError(
                `unexpected column ${i}: got "${header[i]}", expected "${COLUMNS[i]}"`,
            );
        }
    }
    const out: ResultRow[] = [];
    for (let line = 1; line < rows.length; line++) {
        const cells = rows[line];
        if (cells.length !== COLUMNS.length) {
            throw new SchemaError(
                `row ${line}: expected ${COLUMNS.length} cells, got ${cells.length}`,
            );
        }
        const row: Record<string, string | number | null> = {};
        for (let i = 0; i < COLUMNS.length; i++) {
            const col = COLUMNS[i];
            const cell = cells[i];
            if (STRING_COLUMNS.has(col)) {
                row[col] = cell;
            } else if (cell === "NA") {
                row[col] = null;
            } else {
                const v = Number(cell);
                if (!Number.isFinite(v)) {
                    throw new SchemaError(
                        `row ${line}, column "${col}": not a number or NA: "${cell}"`,
                    );
                }
                row[col] = v;
            }
        }
        out.push(row as unknown as ResultRow);
    }
    return out;
}
