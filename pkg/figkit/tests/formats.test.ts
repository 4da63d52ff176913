import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { inflateSync } from "node:zlib";
import { join } from "node:path";

import { CsvSchemaError, parseProbeCsv, readProbeCsv, tableSeries } from "../src/csv.js";
import { RasterFormatError, parseRaster, readRaster, toDb } from "../src/raster.js";
import { crc32, encodePng } from "../src/png.js";
import { dbColor, viridis } from "../src/colormap.js";

const FIXTURES = join(__dirname, "fixtures");

describe("probe csv", () => {
  it("parses a scenario fixture into sorted per-line series", () => {
    const table = readProbeCsv(join(FIXTURES, "straight_galinstan.csv"));
    expect(table.scenario).toBe("straight_galinstan");
    const series = tableSeries(table);
    const lines = series.map((s) => s.line).sort();
    expect(lines).toEqual(["in_path", "tilted"]);
    for (const s of series) {
      expect(s.dists.length).toBeGreaterThan(5);
      const sorted = [...s.dists].sort((a, b) => a - b);
      expect(s.dists).toEqual(sorted);
    }
  });

  it("rejects an empty file by name", () => {
    expect(() => parseProbeCsv("", "empty.csv")).toThrowError(/empty\.csv/);
  });

  it("rejects a wrong header", () => {
    expect(() => parseProbeCsv("a,b,c\n1,2,3\n")).toThrow(CsvSchemaError);
  });

  it("rejects non-numeric rows", () => {
    const text =
      "scenario,probe_id,line,dist_lambda,x_mm,y_mm,z_mm,mag,phase_rad,db\n" +
      "s,p,in_path,oops,0,0,0,1,0,0\n";
    expect(() => parseProbeCsv(text)).toThrow(CsvSchemaError);
  });
});

describe("field raster", () => {
  it("round-trips the straight-path fixture", () => {
    const raster = readRaster(join(FIXTURES, "straight_galinstan.rswp"));
    expect(raster.component).toBe("En");
    expect(raster.spacingMm).toBeCloseTo(0.25, 5);
    expect(raster.nx).toBeGreaterThan(100);
    expect(raster.mags.length).toBe(raster.nx * raster.ny);
  });

  it("rejects bad magic and truncation", () => {
    expect(() => parseRaster(Buffer.from("JUNKxxxxxxxxxxxxxxxxxxxxxxx"))).toThrow(
      RasterFormatError,
    );
    const good = readFileSync(join(FIXTURES, "straight_galinstan.rswp"));
    expect(() => parseRaster(good.subarray(0, good.length - 8))).toThrow(
      /truncated/,
    );
  });

  it("normalizes dB to the raster peak", () => {
    const raster = readRaster(join(FIXTURES, "straight_galinstan.rswp"));
    const db = toDb(raster);
    let peak = -Infinity;
    for (const v of db) peak = Math.max(peak, v);
    expect(peak).toBeCloseTo(0, 9);
  });
});

describe("png encoder", () => {
  it("writes a structurally valid file", () => {
    const rgba = new Uint8Array(3 * 2 * 4);
    rgba.fill(200);
    const png = encodePng(3, 2, rgba);
    expect([...png.subarray(0, 8)]).toEqual([137, 80, 78, 71, 13, 10, 26, 10]);
    // IHDR dims
    expect(png.readUInt32BE(16)).toBe(3);
    expect(png.readUInt32BE(20)).toBe(2);
    // walk chunks and verify CRCs
    let off = 8;
    const types: string[] = [];
    while (off < png.length) {
      const len = png.readUInt32BE(off);
      const type = png.toString("latin1", off + 4, off + 8);
      const body = png.subarray(off + 4, off + 8 + len);
      const crc = png.readUInt32BE(off + 8 + len);
      expect(crc32(body)).toBe(crc);
      types.push(type);
      off += 12 + len;
    }
    expect(types).toEqual(["IHDR", "IDAT", "IEND"]);
  });

  it("decompresses to the expected scanlines", () => {
    const rgba = new Uint8Array(2 * 2 * 4);
    rgba.set([1, 2, 3, 255, 4, 5, 6, 255, 7, 8, 9, 255, 10, 11, 12, 255]);
    const png = encodePng(2, 2, rgba);
    const idatLen = png.readUInt32BE(8 + 25);
    const idat = png.subarray(8 + 25 + 8, 8 + 25 + 8 + idatLen);
    const raw = inflateSync(idat);
    expect([...raw]).toEqual([
      0, 1, 2, 3, 255, 4, 5, 6, 255,
      0, 7, 8, 9, 255, 10, 11, 12, 255,
    ]);
  });
});

describe("colormap", () => {
  it("endpoints are the viridis extremes", () => {
    expect(viridis(0)).toEqual([68, 1, 84]);
    expect(viridis(1)).toEqual([253, 231, 37]);
  });

  it("green channel grows monotonically", () => {
    let prev = -1;
    for (let t = 0; t <= 1.0001; t += 0.05) {
      const [, g] = viridis(t);
      expect(g).toBeGreaterThanOrEqual(prev);
      prev = g;
    }
  });

  it("clamps outside the dB range", () => {
    expect(dbColor(-999, -60, 0)).toEqual(viridis(0));
    expect(dbColor(10, -60, 0)).toEqual(viridis(1));
  });
});
