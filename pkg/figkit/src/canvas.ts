/**
 * Tiny software canvas: an RGBA pixel buffer with rectangles, lines and
 * bitmap text, enough to draw publication-style axes without a browser
 * or native graphics stack.
 */

import { GLYPHS, GLYPH_HEIGHT, GLYPH_WIDTH } from "./font.js";
import type { Rgb } from "./colormap.js";
import { encodePng } from "./png.js";

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let k = 0; k < width * height; k++) {
      this.pixels[4 * k] = background[0];
      this.pixels[4 * k + 1] = background[1];
      this.pixels[4 * k + 2] = background[2];
      this.pixels[4 * k + 3] = 255;
    }
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = 4 * (y * this.width + x);
    this.pixels[k] = color[0];
    this.pixels[k + 1] = color[1];
    this.pixels[k + 2] = color[2];
    this.pixels[k + 3] = 255;
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Rgb): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, color);
      }
    }
  }

  /** Bresenham line with optional thickness and dash pattern. */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    color: Rgb,
    thickness = 1,
    dash?: [number, number],
  ): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    const radius = Math.floor(thickness / 2);
    for (;;) {
      const on = !dash || step % (dash[0] + dash[1]) < dash[0];
      if (on) {
        for (let oy = -radius; oy <= radius; oy++) {
          for (let ox = -radius; ox <= radius; ox++) {
            this.set(x + ox, y + oy, color);
          }
        }
      }
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step++;
    }
  }

  text(x: number, y: number, s: string, color: Rgb): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const ch of s) {
      const rows = GLYPHS[ch.codePointAt(0) ?? 32] ?? GLYPHS[32];
      for (let ry = 0; ry < GLYPH_HEIGHT; ry++) {
        const bits = rows[ry];
        for (let rx = 0; rx < 8; rx++) {
          if (bits & (1 << rx)) this.set(cx + rx, cy + ry, color);
        }
      }
      cx += GLYPH_WIDTH;
    }
  }

  textWidth(s: string): number {
    return s.length * GLYPH_WIDTH;
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.pixels);
  }
}

export const BLACK: Rgb = [0, 0, 0];
export const GREY: Rgb = [150, 150, 150];
export const LIGHT_GREY: Rgb = [225, 225, 225];

/** Pick a round tick step giving roughly `target` divisions of a span. */
export function niceStep(span: number, target = 6): number {
  const raw = span / target;
  const mag = 10 ** Math.floor(Math.log10(raw));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function formatTick(value: number): string {
  const rounded = Math.round(value * 1e6) / 1e6;
  return Number.isInteger(rounded)
    ? String(rounded)
    : String(Number(rounded.toPrecision(4)));
}
