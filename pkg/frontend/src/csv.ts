/** CSV loading for harness result tables. */

import { readFileSync } from "fs";
import Papa from "papaparse";

export type Row = Record<string, number | string | null>;

/** Columns that stay textual; everything else parses as a number. */
const TEXT_COLUMNS = new Set([
  "experiment",
  "algorithm",
  "pattern_kind",
  "sweep",
]);

export class CsvError extends Error {}

/**
 * Read a harness CSV into typed rows. Empty cells become null; numeric cells
 * must parse cleanly. Raises CsvError for unreadable, empty, or headerless
 * input so callers can abort before writing any output.
 */
export function readCsv(path: string): Row[] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new CsvError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvError(`${path}: ${first.message} (row ${first.row})`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new CsvError(`${path}: no data rows`);
  }
  return rows.map((raw, index) => {
    const row: Row = {};
    for (const [key, value] of Object.entries(raw)) {
      if (TEXT_COLUMNS.has(key)) {
        row[key] = value;
      } else if (value === "" || value === undefined) {
        row[key] = null;
      } else {
        const num = Number(value);
        if (Number.isNaN(num)) {
          throw new CsvError(`${path}: row ${index + 1} column ${key}: ` +
            `expected a number, got "${value}"`);
        }
        row[key] = num;
      }
    }
    return row;
  });
}

/** Assert the header carries every column a figure needs. */
export function requireColumns(rows: Row[], columns: string[], path: string): void {
  const present = new Set(Object.keys(rows[0]));
  const missing = columns.filter((c) => !present.has(c));
  if (missing.length > 0) {
    throw new CsvError(`${path}: missing column(s) ${missing.join(", ")}`);
  }
}

/** Numeric cell accessor that rejects blanks. */
export function num(row: Row, key: string): number {
  const value = row[key];
  if (typeof value !== "number") {
    throw new CsvError(`column ${key} has a non-numeric entry`);
  }
  return value;
}

/** Text cell accessor. */
export function text(row: Row, key: string): string {
  const value = row[key];
  return value === null || value === undefined ? "" : String(value);
}
