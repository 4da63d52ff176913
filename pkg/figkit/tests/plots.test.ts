import { describe, expect, it } from "vitest";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { main } from "../src/cli.js";
import { readProbeCsv } from "../src/csv.js";
import { renderCurves } from "../src/curves.js";
import { renderHeatmap } from "../src/heatmap.js";
import { parseRaster, readRaster } from "../src/raster.js";

const FIXTURES = join(__dirname, "fixtures");
const SCENARIOS = [
  "straight_galinstan",
  "straight_copper",
  "pec_walls",
  "surface_only",
];

describe("curves figure", () => {
  it("draws eight series from the four scenario fixtures", () => {
    const tables = SCENARIOS.map((n) => readProbeCsv(join(FIXTURES, `${n}.csv`)));
    const { canvas, drawn } = renderCurves(tables);
    expect(drawn.length).toBe(8); // 4 in-path + 4 tilted
    expect(drawn.filter((d) => d.axis === "left").length).toBe(4);
    expect(drawn.filter((d) => d.axis === "right").length).toBe(4);
    expect(canvas.toPng().length).toBeGreaterThan(1000);
  });

  it("draws two series for a single scenario", () => {
    const table = readProbeCsv(join(FIXTURES, "surface_only.csv"));
    const { drawn } = renderCurves([table]);
    expect(drawn.length).toBe(2);
  });

  it("rejects an empty table list", () => {
    expect(() => renderCurves([])).toThrow(/no probe tables/);
  });
});

describe("heatmap figure", () => {
  it("peak dB column lies inside the channel for the straight scenario", () => {
    const raster = readRaster(join(FIXTURES, "straight_galinstan.rswp"));
    const meta = JSON.parse(
      readFileSync(join(FIXTURES, "straight_galinstan.meta.json"), "utf-8"),
    );
    const layout = renderHeatmap(raster);
    expect(Math.abs(layout.peakRow - meta.channel_axis_row)).toBeLessThan(
      meta.channel_halfwidth_rows,
    );
  });

  it("uniform raster renders a uniform 0 dB map", () => {
    const nx = 8;
    const ny = 6;
    const header = Buffer.alloc(24);
    header.write("RSWP", 0, "latin1");
    header.writeUInt32LE(1, 4);
    header.writeUInt32LE(nx, 8);
    header.writeUInt32LE(ny, 12);
    header.writeFloatLE(0.25, 16);
    header.writeUInt32LE(0, 20);
    const payload = Buffer.alloc(2 * 4 * nx * ny);
    for (let k = 0; k < nx * ny; k++) payload.writeFloatLE(0.5, 4 * k);
    const raster = parseRaster(Buffer.concat([header, payload]));
    const layout = renderHeatmap(raster, { scale: 2 });
    const { canvas } = layout;
    const colors = new Set<string>();
    // skip the 1 px axis frame drawn on the plot edge
    for (let y = 1; y < layout.plotH - 1; y++) {
      for (let x = 1; x < layout.plotW - 1; x++) {
        const k = 4 * ((layout.plotY + y) * canvas.width + layout.plotX + x);
        colors.add(
          `${canvas.pixels[k]},${canvas.pixels[k + 1]},${canvas.pixels[k + 2]}`,
        );
      }
    }
    expect(colors.size).toBe(1);
  });

  it("rejects an inverted dB range", () => {
    const raster = readRaster(join(FIXTURES, "straight_galinstan.rswp"));
    expect(() => renderHeatmap(raster, { dbMin: 0, dbMax: -60 })).toThrow(
      /range/,
    );
  });
});

describe("cli", () => {
  it("renders both figure kinds end to end", () => {
    const dir = mkdtempSync(join(tmpdir(), "figkit-"));
    const curvesOut = join(dir, "curves.png");
    const rc1 = main([
      "curves",
      ...SCENARIOS.map((n) => join(FIXTURES, `${n}.csv`)),
      "-o",
      curvesOut,
    ]);
    expect(rc1).toBe(0);
    expect(existsSync(curvesOut)).toBe(true);

    const heatOut = join(dir, "heat.png");
    const rc2 = main([
      "heatmap",
      join(FIXTURES, "straight_galinstan.rswp"),
      "-o",
      heatOut,
      "--range",
      "-60",
      "0",
    ]);
    expect(rc2).toBe(0);
    expect(readFileSync(heatOut).subarray(1, 4).toString()).toBe("PNG");
  });

  it("usage errors exit 2", () => {
    expect(main([])).toBe(2);
    expect(main(["curves"])).toBe(2);
    expect(main(["heatmap", "a.rswp", "b.rswp", "-o", "x.png"])).toBe(2);
    expect(main(["frobnicate", "-o", "x.png"])).toBe(2);
  });

  it("a bad input file exits 1 with the file named", () => {
    const dir = mkdtempSync(join(tmpdir(), "figkit-"));
    const bad = join(dir, "empty.csv");
    require("node:fs").writeFileSync(bad, "");
    expect(main(["curves", bad, "-o", join(dir, "x.png")])).toBe(1);
  });
});
