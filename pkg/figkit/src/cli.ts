#!/usr/bin/env node
/**
 * rswp-plot: render figures from simulator outputs.
 *
 *   rswp-plot curves <probes.csv ...> -o fig.png [--width N --height N]
 *   rswp-plot heatmap <slice.rswp> -o fig.png [--range MIN MAX]
 *
 * Exit codes: 0 success, 1 render failure, 2 usage error.
 */

import { writeFileSync } from "node:fs";
import { renderCurves } from "./curves.js";
import { renderHeatmap } from "./heatmap.js";
import { readProbeCsv } from "./csv.js";
import { readRaster } from "./raster.js";

const USAGE = `usage:
  rswp-plot curves <probes.csv ...> -o fig.png [--width N] [--height N]
  rswp-plot heatmap <slice.rswp> -o fig.png [--range MIN MAX]`;

interface Parsed {
  command: string;
  inputs: string[];
  out?: string;
  width?: number;
  height?: number;
  range?: [number, number];
}

export function parseArgs(argv: string[]): Parsed {
  if (argv.length === 0) throw new UsageError("missing command");
  const [command, ...rest] = argv;
  if (command !== "curves" && command !== "heatmap") {
    throw new UsageError(`unknown command '${command}'`);
  }
  const parsed: Parsed = { command, inputs: [] };
  for (let i = 0; i < rest.length; i++) {
    const arg = rest[i];
    if (arg === "-o" || arg === "--out") {
      parsed.out = rest[++i];
    } else if (arg === "--width") {
      parsed.width = Number(rest[++i]);
    } else if (arg === "--height") {
      parsed.height = Number(rest[++i]);
    } else if (arg === "--range") {
      const lo = Number(rest[++i]);
      const hi = Number(rest[++i]);
      if (!Number.isFinite(lo) || !Number.isFinite(hi)) {
        throw new UsageError("--range expects two numbers");
      }
      parsed.range = [lo, hi];
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown flag '${arg}'`);
    } else {
      parsed.inputs.push(arg);
    }
  }
  if (!parsed.out) throw new UsageError("missing -o <output.png>");
  if (parsed.inputs.length === 0) throw new UsageError("missing input file");
  if (command === "heatmap" && parsed.inputs.length !== 1) {
    throw new UsageError("heatmap takes exactly one raster");
  }
  return parsed;
}

export class UsageError extends Error {}

export function main(argv: string[]): number {
  let parsed: Parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error(`rswp-plot: ${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  try {
    if (parsed.command === "curves") {
      const tables = parsed.inputs.map(readProbeCsv);
      const { canvas, drawn } = renderCurves(tables, {
        width: parsed.width,
        height: parsed.height,
      });
      writeFileSync(parsed.out!, canvas.toPng());
      console.log(`${parsed.out}: ${drawn.length} series from ${tables.length} scenario(s)`);
    } else {
      const raster = readRaster(parsed.inputs[0]);
      const layout = renderHeatmap(raster, {
        dbMin: parsed.range?.[0],
        dbMax: parsed.range?.[1],
      });
      writeFileSync(parsed.out!, layout.canvas.toPng());
      console.log(
        `${parsed.out}: ${raster.nx} x ${raster.ny} cells, ` +
          `peak column ${layout.peakColumn}`,
      );
    }
    return 0;
  } catch (err) {
    console.error(`rswp-plot: ${(err as Error).message}`);
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("rswp-plot")) {
  process.exit(main(process.argv.slice(2)));
}
