/**
 * Field-map heatmaps: dB of the magnitude raster (normalized to its
 * maximum) with mm axes and a dB colorbar.
 */

import { BLACK, Canvas, GREY, formatTick, niceStep } from "./canvas.js";
import { dbColor, viridis } from "./colormap.js";
import type { FieldRaster } from "./raster.js";
import { toDb } from "./raster.js";

export interface HeatmapOptions {
  dbMin?: number;
  dbMax?: number;
  /** pixels per raster cell; default fits the raster to ~900 px wide */
  scale?: number;
}

export interface HeatmapLayout {
  canvas: Canvas;
  plotX: number;
  plotY: number;
  plotW: number;
  plotH: number;
  scale: number;
  /** raster x index of the strongest-dB column */
  peakColumn: number;
  /** raster y index of the strongest-dB sample */
  peakRow: number;
}

const MARGIN_LEFT = 56;
const MARGIN_BOTTOM = 36;
const MARGIN_TOP = 14;
const COLORBAR_W = 14;
const MARGIN_RIGHT = 76;

export function renderHeatmap(
  raster: FieldRaster,
  options: HeatmapOptions = {},
): HeatmapLayout {
  const dbMin = options.dbMin ?? -60;
  const dbMax = options.dbMax ?? 0;
  if (dbMin >= dbMax) {
    throw new Error(`bad dB range [${dbMin}, ${dbMax}]`);
  }
  const { nx, ny } = raster;
  const scale =
    options.scale ?? Math.max(1, Math.min(8, Math.round(900 / nx)));
  const plotW = nx * scale;
  const plotH = ny * scale;
  const canvas = new Canvas(
    MARGIN_LEFT + plotW + MARGIN_RIGHT,
    MARGIN_TOP + plotH + MARGIN_BOTTOM,
  );
  const px = MARGIN_LEFT;
  const py = MARGIN_TOP;

  const db = toDb(raster);
  let peakIdx = 0;
  for (let k = 1; k < db.length; k++) {
    if (db[k] > db[peakIdx]) peakIdx = k;
  }

  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < ny; j++) {
      const color = dbColor(db[i * ny + j], dbMin, dbMax);
      // image rows run top-down; raster y runs bottom-up
      const sy = py + (ny - 1 - j) * scale;
      const sx = px + i * scale;
      for (let oy = 0; oy < scale; oy++) {
        for (let ox = 0; ox < scale; ox++) {
          canvas.set(sx + ox, sy + oy, color);
        }
      }
    }
  }

  // frame and mm axes (raster origin is unknown; axes start at 0 mm)
  canvas.line(px, py, px, py + plotH, BLACK);
  canvas.line(px, py + plotH, px + plotW, py + plotH, BLACK);
  const xSpanMm = nx * raster.spacingMm;
  const xStep = niceStep(xSpanMm);
  for (let v = 0; v <= xSpanMm + 1e-9; v += xStep) {
    const sx = px + Math.round((v / raster.spacingMm) * scale);
    canvas.line(sx, py + plotH, sx, py + plotH + 4, BLACK);
    const label = formatTick(v);
    canvas.text(sx - canvas.textWidth(label) / 2, py + plotH + 7, label, BLACK);
  }
  canvas.text(px + plotW / 2 - 12, py + plotH + 21, "x (mm)", BLACK);
  const ySpanMm = ny * raster.spacingMm;
  const yStep = niceStep(ySpanMm, 5);
  for (let v = 0; v <= ySpanMm + 1e-9; v += yStep) {
    const sy = py + plotH - Math.round((v / raster.spacingMm) * scale);
    canvas.line(px - 4, sy, px, sy, BLACK);
    const label = formatTick(v);
    canvas.text(px - 8 - canvas.textWidth(label), sy - 5, label, BLACK);
  }
  canvas.text(2, py + plotH / 2 - 5, "y", BLACK);

  // colorbar
  const cbX = px + plotW + 18;
  for (let sy = 0; sy < plotH; sy++) {
    const t = 1 - sy / Math.max(plotH - 1, 1);
    const color = viridis(t);
    for (let ox = 0; ox < COLORBAR_W; ox++) {
      canvas.set(cbX + ox, py + sy, color);
    }
  }
  const cbStep = niceStep(dbMax - dbMin, 5);
  for (let v = dbMin; v <= dbMax + 1e-9; v += cbStep) {
    const t = (v - dbMin) / (dbMax - dbMin);
    const sy = py + Math.round((1 - t) * (plotH - 1));
    canvas.line(cbX + COLORBAR_W, sy, cbX + COLORBAR_W + 3, sy, GREY);
    canvas.text(cbX + COLORBAR_W + 6, sy - 5, formatTick(v), BLACK);
  }
  canvas.text(cbX - 4, py - 12, "dB", BLACK);

  return {
    canvas,
    plotX: px,
    plotY: py,
    plotW,
    plotH,
    scale,
    peakColumn: Math.floor(peakIdx / ny),
    peakRow: peakIdx % ny,
  };
}
