/**
 * Viridis colormap: perceptually uniform, readable in grayscale.
 * Anchor colors with linear interpolation between them.
 */

export type Rgb = [number, number, number];

const VIRIDIS_ANCHORS: Rgb[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

/** Map t in [0, 1] to a viridis RGB triple. */
export function viridis(t: number): Rgb {
  const clamped = Math.min(Math.max(t, 0), 1);
  const pos = clamped * (VIRIDIS_ANCHORS.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, VIRIDIS_ANCHORS.length - 1);
  const frac = pos - lo;
  const a = VIRIDIS_ANCHORS[lo];
  const b = VIRIDIS_ANCHORS[hi];
  return [
    Math.round(lerp(a[0], b[0], frac)),
    Math.round(lerp(a[1], b[1], frac)),
    Math.round(lerp(a[2], b[2], frac)),
  ];
}

/** Map a dB value onto the colormap over [minDb, maxDb]. */
export function dbColor(db: number, minDb: number, maxDb: number): Rgb {
  if (!Number.isFinite(db)) return viridis(0);
  return viridis((db - minDb) / (maxDb - minDb));
}

/** Categorical palette for curve series (one color per scenario). */
export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
  [127, 127, 127],
];

export function seriesColor(index: number): Rgb {
  return SERIES_COLORS[index % SERIES_COLORS.length];
}
