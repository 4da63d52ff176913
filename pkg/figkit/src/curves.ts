/**
 * dB-vs-distance curve figures with two y axes: in-path probe lines on
 * the left axis (solid), tilted-line probes on the right axis (dashed),
 * one color per scenario.
 */

import { BLACK, Canvas, GREY, LIGHT_GREY, formatTick, niceStep } from "./canvas.js";
import { seriesColor } from "./colormap.js";
import type { ProbeTable, Series } from "./csv.js";
import { tableSeries } from "./csv.js";

export interface CurvesOptions {
  width?: number;
  height?: number;
}

export interface CurvesLayout {
  canvas: Canvas;
  /** series actually drawn, in draw order */
  drawn: { label: string; line: string; axis: "left" | "right" }[];
}

const ML = 60;
const MR = 64;
const MT = 16;
const MB = 70;

interface AxisScale {
  min: number;
  max: number;
  toPixel(value: number, plotY: number, plotH: number): number;
}

function axisRange(values: number[]): AxisScale {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (!Number.isFinite(min) || !Number.isFinite(max)) {
    min = -1;
    max = 1;
  }
  if (max - min < 1e-9) {
    min -= 1;
    max += 1;
  }
  const pad = 0.06 * (max - min);
  min -= pad;
  max += pad;
  return {
    min,
    max,
    toPixel(value, plotY, plotH) {
      return plotY + plotH - ((value - min) / (max - min)) * plotH;
    },
  };
}

export function renderCurves(
  tables: ProbeTable[],
  options: CurvesOptions = {},
): CurvesLayout {
  if (tables.length === 0) {
    throw new Error("no probe tables to plot");
  }
  const width = options.width ?? 960;
  const height = options.height ?? 540;
  const canvas = new Canvas(width, height);
  const plotX = ML;
  const plotY = MT;
  const plotW = width - ML - MR;
  const plotH = height - MT - MB;

  const leftSeries: Series[] = [];
  const rightSeries: Series[] = [];
  for (const table of tables) {
    for (const series of tableSeries(table)) {
      (series.line === "tilted" ? rightSeries : leftSeries).push(series);
    }
  }
  const finite = (vals: number[]) => vals.filter((v) => Number.isFinite(v));
  const left = axisRange(leftSeries.flatMap((s) => finite(s.db)));
  const right = axisRange(
    rightSeries.length ? rightSeries.flatMap((s) => finite(s.db)) : [-1, 0],
  );
  const allDists = [...leftSeries, ...rightSeries].flatMap((s) => s.dists);
  const xMin = Math.min(...allDists);
  const xMax = Math.max(...allDists);
  const toX = (d: number) =>
    plotX + ((d - xMin) / Math.max(xMax - xMin, 1e-9)) * plotW;

  // grid and axes
  const xStep = niceStep(xMax - xMin);
  for (let v = Math.ceil(xMin / xStep) * xStep; v <= xMax + 1e-9; v += xStep) {
    const sx = Math.round(toX(v));
    canvas.line(sx, plotY, sx, plotY + plotH, LIGHT_GREY);
    canvas.line(sx, plotY + plotH, sx, plotY + plotH + 4, BLACK);
    const label = formatTick(v);
    canvas.text(sx - canvas.textWidth(label) / 2, plotY + plotH + 7, label, BLACK);
  }
  const lStep = niceStep(left.max - left.min, 6);
  for (
    let v = Math.ceil(left.min / lStep) * lStep;
    v <= left.max + 1e-9;
    v += lStep
  ) {
    const sy = Math.round(left.toPixel(v, plotY, plotH));
    canvas.line(plotX, sy, plotX + plotW, sy, LIGHT_GREY);
    canvas.line(plotX - 4, sy, plotX, sy, BLACK);
    const label = formatTick(v);
    canvas.text(plotX - 8 - canvas.textWidth(label), sy - 5, label, BLACK);
  }
  if (rightSeries.length) {
    const rStep = niceStep(right.max - right.min, 6);
    for (
      let v = Math.ceil(right.min / rStep) * rStep;
      v <= right.max + 1e-9;
      v += rStep
    ) {
      const sy = Math.round(right.toPixel(v, plotY, plotH));
      canvas.line(plotX + plotW, sy, plotX + plotW + 4, sy, GREY);
      canvas.text(plotX + plotW + 7, sy - 5, formatTick(v), GREY);
    }
  }
  canvas.line(plotX, plotY, plotX, plotY + plotH, BLACK);
  canvas.line(plotX, plotY + plotH, plotX + plotW, plotY + plotH, BLACK);
  canvas.line(plotX + plotW, plotY, plotX + plotW, plotY + plotH, BLACK);
  canvas.text(plotX + plotW / 2 - 40, height - 26, "distance (lambda)", BLACK);
  canvas.text(4, plotY + 2, "in-path dB", BLACK);
  canvas.text(plotX + plotW + 7, plotY + 2, "tilted dB", GREY);

  // series
  const drawn: CurvesLayout["drawn"] = [];
  const scenarioIndex = new Map<string, number>();
  const draw = (series: Series, axis: "left" | "right", scale: AxisScale) => {
    if (!scenarioIndex.has(series.label)) {
      scenarioIndex.set(series.label, scenarioIndex.size);
    }
    const color = seriesColor(scenarioIndex.get(series.label)!);
    const dash: [number, number] | undefined =
      axis === "right" ? [4, 4] : undefined;
    for (let k = 1; k < series.dists.length; k++) {
      if (!Number.isFinite(series.db[k - 1]) || !Number.isFinite(series.db[k])) {
        continue;
      }
      canvas.line(
        toX(series.dists[k - 1]),
        scale.toPixel(series.db[k - 1], plotY, plotH),
        toX(series.dists[k]),
        scale.toPixel(series.db[k], plotY, plotH),
        color,
        axis === "left" ? 2 : 1,
        dash,
      );
    }
    drawn.push({ label: series.label, line: series.line, axis });
  };
  for (const s of leftSeries) draw(s, "left", left);
  for (const s of rightSeries) draw(s, "right", right);

  // legend: one entry per scenario
  let lx = plotX;
  const ly = height - 14;
  for (const [label, idx] of scenarioIndex.entries()) {
    const color = seriesColor(idx);
    canvas.line(lx, ly + 4, lx + 16, ly + 4, color, 2);
    canvas.text(lx + 20, ly - 1, label, BLACK);
    lx += 28 + canvas.textWidth(label);
  }

  return { canvas, drawn };
}
