/** Headless figure rendering to SVG or PNG files. */

import { mkdirSync, writeFileSync } from "fs";
import { dirname, extname } from "path";

import { createCanvas } from "@napi-rs/canvas";
import * as echarts from "echarts";

import { Series } from "./aggregate";
import { CsvError, readCsv } from "./csv";
import { DEFAULT_OPTIONS, FigureKind, FigureOptions, buildFigure } from "./figures";

export interface RenderResult {
  outPath: string;
  series: Series[];
}

const WIDTH = 900;
const HEIGHT = 600;

function renderSvg(option: echarts.EChartsCoreOption): string {
  const chart = echarts.init(null, undefined, {
    renderer: "svg",
    ssr: true,
    width: WIDTH,
    height: HEIGHT,
  });
  try {
    chart.setOption(option);
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}

function renderPng(option: echarts.EChartsCoreOption): Buffer {
  const canvas = createCanvas(WIDTH, HEIGHT);
  const chart = echarts.init(canvas as unknown as HTMLCanvasElement);
  try {
    chart.setOption(option);
    return canvas.toBuffer("image/png");
  } finally {
    chart.dispose();
  }
}

/**
 * Render one figure from a harness CSV. The output format follows the file
 * extension (.svg or .png). Nothing is written unless building the figure
 * succeeded, so a failed invocation leaves no partial artifact behind.
 */
export function renderFigure(
  kind: FigureKind,
  csvPath: string,
  outPath: string,
  options: Partial<FigureOptions> = {},
): RenderResult {
  const merged: FigureOptions = { ...DEFAULT_OPTIONS, ...options };
  const rows = readCsv(csvPath);
  const { option, series } = buildFigure(kind, rows, merged, csvPath);
  const format = extname(outPath).toLowerCase();
  let payload: string | Buffer;
  if (format === ".svg") {
    payload = renderSvg(option);
  } else if (format === ".png") {
    payload = renderPng(option);
  } else {
    throw new CsvError(`unsupported output format "${format}" (use .svg or .png)`);
  }
  const parent = dirname(outPath);
  if (parent && parent !== ".") {
    mkdirSync(parent, { recursive: true });
  }
  writeFileSync(outPath, payload);
  return { outPath, series };
}
