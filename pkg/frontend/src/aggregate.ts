/** Grouped aggregation of per-trial rows into plottable series. */

import { Row, num, text } from "./csv";

export type AggregateKind = "median" | "mean";

export function mean(values: number[]): number {
  if (values.length === 0) {
    throw new Error("mean of empty list");
  }
  return values.reduce((a, b) => a + b, 0) / values.length;
}

/** Quantile with linear interpolation between order statistics. */
export function quantile(values: number[], q: number): number {
  if (values.length === 0) {
    throw new Error("quantile of empty list");
  }
  if (q < 0 || q > 1) {
    throw new Error("quantile level must lie in [0, 1]");
  }
  const sorted = [...values].sort((a, b) => a - b);
  const position = (sorted.length - 1) * q;
  const lower = Math.floor(position);
  const upper = Math.ceil(position);
  if (lower === upper) {
    return sorted[lower];
  }
  return sorted[lower] + (sorted[upper] - sorted[lower]) * (position - lower);
}

export function median(values: number[]): number {
  return quantile(values, 0.5);
}

export interface SeriesPoint {
  x: number;
  value: number;
  q25: number;
  q75: number;
  count: number;
}

export interface Series {
  name: string;
  points: SeriesPoint[];
}

/**
 * Group rows by a series label and an x coordinate, then reduce the value
 * column per group. Points come back sorted by x; series sort by name so the
 * output is deterministic for deterministic input.
 */
export function aggregateSeries(
  rows: Row[],
  keys: { series: string | ((row: Row) => string); x: string | ((row: Row) => number); value: string },
  aggregate: AggregateKind = "median",
): Series[] {
  const seriesOf = typeof keys.series === "function" ? keys.series
    : (row: Row) => text(row, keys.series as string);
  const xOf = typeof keys.x === "function" ? keys.x
    : (row: Row) => num(row, keys.x as string);
  const buckets = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    if (row[keys.value] === null) {
      continue; // missing metric for this row
    }
    const name = seriesOf(row);
    const x = xOf(row);
    let byX = buckets.get(name);
    if (!byX) {
      byX = new Map();
      buckets.set(name, byX);
    }
    const values = byX.get(x);
    if (values) {
      values.push(num(row, keys.value));
    } else {
      byX.set(x, [num(row, keys.value)]);
    }
  }
  const result: Series[] = [];
  for (const name of [...buckets.keys()].sort()) {
    const byX = buckets.get(name)!;
    const points = [...byX.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, values]) => ({
        x,
        value: aggregate === "median" ? median(values) : mean(values),
        q25: quantile(values, 0.25),
        q75: quantile(values, 0.75),
        count: values.length,
      }));
    result.push({ name, points });
  }
  return result;
}
