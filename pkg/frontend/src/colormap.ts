/** Symmetric diverging colormap for signed phase-space values:
 * blue for positive, red for negative, white at zero. */

export type Rgb = [number, number, number];

// anchor stops from -1 (strong negative, red) through 0 (white) to +1 (blue)
const STOPS: Array<[number, Rgb]> = [
  [-1.0, [103, 0, 31]],
  [-0.5, [214, 96, 77]],
  [0.0, [247, 247, 247]],
  [0.5, [67, 147, 195]],
  [1.0, [5, 48, 97]],
];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

/** Map a value in [-max, max] to an rgb() string; clips outside the range. */
export function divergingColor(value: number, max: number): string {
  const t = max > 0 ? Math.max(-1, Math.min(1, value / max)) : 0;
  let lo = STOPS[0];
  let hi = STOPS[STOPS.length - 1];
  for (let i = 0; i + 1 < STOPS.length; i++) {
    if (t >= STOPS[i][0] && t <= STOPS[i + 1][0]) {
      lo = STOPS[i];
      hi = STOPS[i + 1];
      break;
    }
  }
  const span = hi[0] - lo[0];
  const f = span > 0 ? (t - lo[0]) / span : 0;
  const rgb = [0, 1, 2].map((k) => Math.round(lerp(lo[1][k], hi[1][k], f)));
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

/** True when the colour string is on the red (negative) side. */
export function isRedish(fill: string): boolean {
  const m = fill.match(/rgb\((\d+),(\d+),(\d+)\)/);
  if (!m) return false;
  const [r, , b] = [Number(m[1]), Number(m[2]), Number(m[3])];
  return r > b + 20;
}
