/**
 * Probe-table CSV parsing.
 *
 * Schema: scenario,probe_id,line,dist_lambda,x_mm,y_mm,z_mm,mag,phase_rad,db
 * (UTF-8, LF, '.' decimal). One file holds one scenario's in-path and
 * tilted probe lines.
 */

import { readFileSync } from "node:fs";

export const CSV_HEADER =
  "scenario,probe_id,line,dist_lambda,x_mm,y_mm,z_mm,mag,phase_rad,db";

export interface ProbeRow {
  scenario: string;
  probeId: string;
  line: string;
  distLambda: number;
  xMm: number;
  yMm: number;
  zMm: number;
  mag: number;
  phaseRad: number;
  db: number;
}

export interface ProbeTable {
  scenario: string;
  rows: ProbeRow[];
}

export class CsvSchemaError extends Error {}

export function parseProbeCsv(text: string, name = "<csv>"): ProbeTable {
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError(`${name}: empty probe CSV`);
  }
  if (lines[0].trim() !== CSV_HEADER) {
    throw new CsvSchemaError(`${name}: unexpected header ${lines[0].trim()}`);
  }
  if (lines.length === 1) {
    throw new CsvSchemaError(`${name}: probe CSV has no data rows`);
  }
  const rows: ProbeRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 10) {
      throw new CsvSchemaError(`${name}:${i + 1}: expected 10 fields`);
    }
    const nums = parts.slice(3).map(Number);
    if (nums.some((v) => Number.isNaN(v))) {
      throw new CsvSchemaError(`${name}:${i + 1}: non-numeric value`);
    }
    rows.push({
      scenario: parts[0],
      probeId: parts[1],
      line: parts[2],
      distLambda: nums[0],
      xMm: nums[1],
      yMm: nums[2],
      zMm: nums[3],
      mag: nums[4],
      phaseRad: nums[5],
      db: nums[6],
    });
  }
  return { scenario: rows[0].scenario, rows };
}

export function readProbeCsv(path: string): ProbeTable {
  return parseProbeCsv(readFileSync(path, "utf-8"), path);
}

export interface Series {
  label: string;
  line: string;
  dists: number[];
  db: number[];
}

/** Split a probe table into per-line series sorted by distance. */
export function tableSeries(table: ProbeTable): Series[] {
  const byLine = new Map<string, ProbeRow[]>();
  for (const row of table.rows) {
    const bucket = byLine.get(row.line) ?? [];
    bucket.push(row);
    byLine.set(row.line, bucket);
  }
  const out: Series[] = [];
  for (const [line, rows] of [...byLine.entries()].sort()) {
    rows.sort((a, b) => a.distLambda - b.distLambda);
    out.push({
      label: table.scenario,
      line,
      dists: rows.map((r) => r.distLambda),
      db: rows.map((r) => r.db),
    });
  }
  return out;
}
