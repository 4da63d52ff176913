/**
 * Reader for the simulator's binary field-slice rasters.
 *
 * Layout (little-endian): magic "RSWP", u32 version (=1), u32 nx, u32 ny,
 * f32 spacing in mm, u32 component id; payload nx*ny float32 magnitudes
 * (row-major, x index first) followed by nx*ny float32 phases.
 */

import { readFileSync } from "node:fs";

export const COMPONENT_NAMES: Record<number, string> = {
  0: "En",
  1: "Et_long",
  2: "Et_trans",
};

export interface FieldRaster {
  nx: number;
  ny: number;
  spacingMm: number;
  component: string;
  /** magnitude at (i, j) = mags[i * ny + j] */
  mags: Float32Array;
  phases: Float32Array;
}

export class RasterFormatError extends Error {}

export function parseRaster(buf: Buffer): FieldRaster {
  if (buf.length < 24 || buf.toString("latin1", 0, 4) !== "RSWP") {
    throw new RasterFormatError("not a field raster (bad magic)");
  }
  const version = buf.readUInt32LE(4);
  if (version !== 1) {
    throw new RasterFormatError(`unsupported raster version ${version}`);
  }
  const nx = buf.readUInt32LE(8);
  const ny = buf.readUInt32LE(12);
  const spacingMm = buf.readFloatLE(16);
  const componentId = buf.readUInt32LE(20);
  const need = 24 + 2 * 4 * nx * ny;
  if (buf.length !== need) {
    throw new RasterFormatError(
      `truncated raster: ${buf.length} of ${need} bytes`,
    );
  }
  const component = COMPONENT_NAMES[componentId];
  if (component === undefined) {
    throw new RasterFormatError(`unknown component id ${componentId}`);
  }
  const mags = new Float32Array(nx * ny);
  const phases = new Float32Array(nx * ny);
  for (let k = 0; k < nx * ny; k++) {
    mags[k] = buf.readFloatLE(24 + 4 * k);
    phases[k] = buf.readFloatLE(24 + 4 * (nx * ny + k));
  }
  return { nx, ny, spacingMm, component, mags, phases };
}

export function readRaster(path: string): FieldRaster {
  return parseRaster(readFileSync(path));
}

/** Magnitudes as dB relative to the raster maximum. */
export function toDb(raster: FieldRaster): Float32Array {
  let peak = 0;
  for (const m of raster.mags) peak = Math.max(peak, m);
  const out = new Float32Array(raster.mags.length);
  if (peak <= 0) {
    out.fill(0);
    return out;
  }
  for (let k = 0; k < out.length; k++) {
    const m = raster.mags[k];
    out[k] = m > 0 ? 20 * Math.log10(m / peak) : -Infinity;
  }
  return out;
}
