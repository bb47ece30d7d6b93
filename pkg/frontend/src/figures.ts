/** Per-experiment chart builders: harness rows in, ECharts options out. */

import type { EChartsCoreOption } from "echarts";

import { AggregateKind, Series, aggregateSeries } from "./aggregate";
import { CsvError, Row, num, requireColumns, text } from "./csv";

export const FIGURE_KINDS = [
  "radiation_profile",
  "pattern_nmse",
  "convergence",
  "cv_sweep",
  "rate_vs_snr",
  "nmse_vs_compression",
  "complexity",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureOptions {
  aggregate: AggregateKind;
  /** Sweep axis for radiation profiles. */
  sweep: "angle" | "distance";
  /** Draw the interquartile band behind each median line. */
  bands: boolean;
}

export const DEFAULT_OPTIONS: FigureOptions = {
  aggregate: "median",
  sweep: "angle",
  bands: true,
};

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
];

function lineChart(
  title: string,
  xLabel: string,
  yLabel: string,
  series: Series[],
  options: FigureOptions,
  overrides: { symbol?: boolean; logY?: boolean } = {},
): EChartsCoreOption {
  const chartSeries: object[] = [];
  series.forEach((group, index) => {
    const color = PALETTE[index % PALETTE.length];
    if (options.bands && !overrides.logY && group.points.some((p) => p.count > 1)) {
      chartSeries.push({
        name: `${group.name} (band)`,
        type: "line",
        stack: `band-${group.name}`,
        data: group.points.map((p) => [p.x, p.q25]),
        lineStyle: { opacity: 0 },
        symbol: "none",
        silent: true,
        tooltip: { show: false },
      });
      chartSeries.push({
        name: `${group.name} (band)`,
        type: "line",
        stack: `band-${group.name}`,
        data: group.points.map((p) => [p.x, p.q75 - p.q25]),
        lineStyle: { opacity: 0 },
        areaStyle: { color, opacity: 0.15 },
        symbol: "none",
        silent: true,
        tooltip: { show: false },
      });
    }
    chartSeries.push({
      name: group.name,
      type: "line",
      data: group.points.map((p) => [p.x, p.value]),
      itemStyle: { color },
      lineStyle: { color },
      symbol: overrides.symbol === false ? "none" : "circle",
      symbolSize: 6,
    });
  });
  return {
    animation: false,
    backgroundColor: "#ffffff",
    title: { text: title, left: "center" },
    legend: { bottom: 0, data: series.map((s) => s.name) },
    grid: { left: 70, right: 30, top: 50, bottom: 70 },
    xAxis: { type: "value", name: xLabel, nameLocation: "middle", nameGap: 28 },
    yAxis: {
      type: overrides.logY ? "log" : "value",
      name: yLabel,
      nameLocation: "middle",
      nameGap: 50,
    },
    series: chartSeries,
  };
}

function buildPatternNmse(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["pattern_kind", "snr_db", "nmse_db"], path);
  const series = aggregateSeries(
    rows, { series: "pattern_kind", x: "snr_db", value: "nmse_db" }, options.aggregate);
  return {
    option: lineChart("Extrapolation NMSE by selection pattern", "SNR (dB)",
                      "NMSE (dB)", series, options),
    series,
  };
}

function buildRateVsSnr(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["algorithm", "snr_db", "rate_bps_hz"], path);
  const series = aggregateSeries(
    rows, { series: "algorithm", x: "snr_db", value: "rate_bps_hz" }, options.aggregate);
  return {
    option: lineChart("Average uplink achievable rate", "SNR (dB)",
                      "Rate (bits/s/Hz)", series, options),
    series,
  };
}

function buildNmseVsCompression(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["algorithm", "eta", "nmse_db"], path);
  const series = aggregateSeries(
    rows,
    { series: "algorithm", x: (row) => 1 / num(row, "eta"), value: "nmse_db" },
    options.aggregate,
  );
  return {
    option: lineChart("NMSE across compression rates", "1 / compression rate",
                      "NMSE (dB)", series, options),
    series,
  };
}

function buildConvergence(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["algorithm", "iteration", "objective"], path);
  const series = aggregateSeries(
    rows, { series: "algorithm", x: "iteration", value: "objective" }, options.aggregate);
  return {
    option: lineChart("Refinement objective convergence", "Iteration",
                      "Residual power", series, options,
                      { symbol: false, logY: true }),
    series,
  };
}

function buildComplexity(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["algorithm", "snr_db", "correlation_ops"], path);
  const series = aggregateSeries(
    rows, { series: "algorithm", x: "snr_db", value: "correlation_ops" },
    options.aggregate);
  const categories = [...new Set(series.flatMap((s) => s.points.map((p) => p.x)))]
    .sort((a, b) => a - b);
  const option: EChartsCoreOption = {
    animation: false,
    backgroundColor: "#ffffff",
    title: { text: "Correlation operations per extrapolation", left: "center" },
    legend: { bottom: 0, data: series.map((s) => s.name) },
    grid: { left: 80, right: 30, top: 50, bottom: 70 },
    xAxis: { type: "category", name: "SNR (dB)", nameLocation: "middle",
             nameGap: 28, data: categories.map(String) },
    yAxis: { type: "value", name: "Column multiplies", nameLocation: "middle",
             nameGap: 60 },
    series: series.map((group, index) => ({
      name: group.name,
      type: "bar",
      itemStyle: { color: PALETTE[index % PALETTE.length] },
      data: categories.map((snr) => {
        const point = group.points.find((p) => p.x === snr);
        return point ? point.value : null;
      }),
    })),
  };
  return { option, series };
}

function buildCvSweep(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["alpha", "accuracy_pct"], path);
  const accuracy = aggregateSeries(
    rows, { series: () => "accuracy", x: "alpha", value: "accuracy_pct" },
    options.aggregate);
  const efficiencyColumn = rows.some((r) => r.efficiency_pct !== null)
    ? "efficiency_pct" : "efficiency_ops_pct";
  const efficiency = aggregateSeries(
    rows, { series: () => "efficiency", x: "alpha", value: efficiencyColumn },
    options.aggregate);
  const series = [...accuracy, ...efficiency];
  const option: EChartsCoreOption = {
    animation: false,
    backgroundColor: "#ffffff",
    title: { text: "Cross-validation accuracy and efficiency", left: "center" },
    legend: { bottom: 0, data: ["accuracy", "efficiency"] },
    grid: { left: 70, right: 70, top: 50, bottom: 70 },
    xAxis: { type: "value", name: "CV ratio", nameLocation: "middle", nameGap: 28 },
    yAxis: [
      { type: "value", name: "Accuracy (%)", nameLocation: "middle", nameGap: 45 },
      { type: "value", name: "Efficiency (%)", nameLocation: "middle", nameGap: 45 },
    ],
    series: [
      {
        name: "accuracy",
        type: "line",
        yAxisIndex: 0,
        itemStyle: { color: PALETTE[0] },
        data: accuracy[0].points.map((p) => [p.x, p.value]),
      },
      {
        name: "efficiency",
        type: "line",
        yAxisIndex: 1,
        itemStyle: { color: PALETTE[1] },
        data: efficiency[0].points.map((p) => [p.x, p.value]),
      },
    ],
  };
  return { option, series };
}

function buildRadiationProfile(rows: Row[], options: FigureOptions, path: string) {
  requireColumns(rows, ["pattern_kind", "sweep", "coordinate", "power"], path);
  const selected = rows.filter((row) => text(row, "sweep") === options.sweep);
  if (selected.length === 0) {
    throw new CsvError(`${path}: no rows for sweep "${options.sweep}"`);
  }
  let series = aggregateSeries(
    selected, { series: "pattern_kind", x: "coordinate", value: "power" },
    options.aggregate);
  // Normalize each curve to peak 1 so pattern cardinality never skews the plot.
  series = series.map((group) => {
    const peak = Math.max(...group.points.map((p) => p.value));
    return peak > 0
      ? {
          name: group.name,
          points: group.points.map((p) => ({ ...p, value: p.value / peak,
                                             q25: p.q25 / peak, q75: p.q75 / peak })),
        }
      : group;
  });
  const xLabel = options.sweep === "angle" ? "sin(angle)" : "distance (m)";
  return {
    option: lineChart(`Radiation profile (${options.sweep} sweep)`, xLabel,
                      "Normalized power", series, { ...options, bands: false },
                      { symbol: false }),
    series,
  };
}

const BUILDERS: Record<FigureKind, (rows: Row[], options: FigureOptions,
                                    path: string) => { option: EChartsCoreOption; series: Series[] }> = {
  radiation_profile: buildRadiationProfile,
  pattern_nmse: buildPatternNmse,
  convergence: buildConvergence,
  cv_sweep: buildCvSweep,
  rate_vs_snr: buildRateVsSnr,
  nmse_vs_compression: buildNmseVsCompression,
  complexity: buildComplexity,
};

export function buildFigure(kind: FigureKind, rows: Row[],
                            options: FigureOptions, path: string) {
  const builder = BUILDERS[kind];
  if (!builder) {
    throw new CsvError(`unknown figure kind "${kind}"`);
  }
  return builder(rows, options, path);
}
