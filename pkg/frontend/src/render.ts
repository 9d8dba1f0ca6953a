// Pure view-model construction. Readouts pass the service's numbers through
// verbatim: the client never recomputes optima, utilities, or winners.

import type {
  ChooseResponse,
  CurvePoint,
  EvaluationResponse,
  Indifference,
  UtilityField,
} from "./types";

export interface RocReadouts {
  threshold: string;
  tpr: string;
  fpr: string;
  payoff: string;
}

export function formatThreshold(threshold: number | null): string {
  return threshold === null ? "+inf" : String(threshold);
}

export function readouts(response: EvaluationResponse): RocReadouts {
  const opt = response.optimal;
  return {
    threshold: formatThreshold(opt.threshold),
    tpr: String(opt.tpr),
    fpr: String(opt.fpr),
    payoff: String(opt.expected_utility_per_case),
  };
}

export interface ComparisonRow {
  name: string;
  net: number;
  winner: boolean;
}

export function comparisonRows(choice: ChooseResponse): ComparisonRow[] {
  return Object.entries(choice.net_values).map(([name, net]) => ({
    name,
    net,
    winner: name === choice.chosen_option,
  }));
}

/** (fpr, tpr) pairs of the curve, ready for unit-square plotting. */
export function curvePath(points: CurvePoint[]): Array<[number, number]> {
  return points.map((pt) => [pt.fpr, pt.tpr]);
}

/**
 * The indifference line clipped to the unit square, as two (fpr, tpr)
 * endpoints; null when the line is vertical or misses the square entirely.
 */
export function indifferenceSegment(
  line: Indifference,
): [[number, number], [number, number]] | null {
  if (line.slope === null || line.intercept === null) return null;
  const { slope, intercept } = line;
  const candidates: Array<[number, number]> = [];
  const push = (fpr: number, tpr: number) => {
    if (fpr >= -1e-12 && fpr <= 1 + 1e-12 && tpr >= -1e-12 && tpr <= 1 + 1e-12) {
      candidates.push([Math.min(1, Math.max(0, fpr)), Math.min(1, Math.max(0, tpr))]);
    }
  };
  push(0, intercept);
  push(1, slope + intercept);
  if (slope !== 0) {
    push(-intercept / slope, 0);
    push((1 - intercept) / slope, 1);
  }
  candidates.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const deduped = candidates.filter(
    (c, i) => i === 0 || Math.abs(c[0] - candidates[i - 1][0]) > 1e-12 || Math.abs(c[1] - candidates[i - 1][1]) > 1e-12,
  );
  if (deduped.length < 2) return null;
  return [deduped[0], deduped[deduped.length - 1]];
}

// Diverging heatmap anchored at zero: losses shade red, gains green, zero is
// white. Pixel rows run top-down while field rows run tpr-upward, so the
// field is flipped vertically.
const NEGATIVE_RGB: [number, number, number] = [214, 69, 56];
const POSITIVE_RGB: [number, number, number] = [46, 139, 87];

export function cellColor(value: number, maxAbs: number): [number, number, number] {
  if (maxAbs <= 0) return [255, 255, 255];
  const t = Math.min(1, Math.abs(value) / maxAbs);
  const target = value < 0 ? NEGATIVE_RGB : POSITIVE_RGB;
  return [
    Math.round(255 + (target[0] - 255) * t),
    Math.round(255 + (target[1] - 255) * t),
    Math.round(255 + (target[2] - 255) * t),
  ];
}

export function heatmapRgba(field: UtilityField) {
  const n = field.n;
  const maxAbs = field.values.reduce((acc, v) => Math.max(acc, Math.abs(v)), 0);
  const rgba = new Uint8ClampedArray(n * n * 4);
  for (let row = 0; row < n; row++) {
    const fieldRow = n - 1 - row; // flip: field row 0 is tpr=0 (plot bottom)
    for (let col = 0; col < n; col++) {
      const [r, g, b] = cellColor(field.values[fieldRow * n + col], maxAbs);
      const at = (row * n + col) * 4;
      rgba[at] = r;
      rgba[at + 1] = g;
      rgba[at + 2] = b;
      rgba[at + 3] = 255;
    }
  }
  return rgba;
}
