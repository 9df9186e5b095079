/** Minimal deterministic SVG assembly (no DOM dependency). */

export interface Attrs {
  [key: string]: string | number;
}

export function tag(name: string, attrs: Attrs, body = ''): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === 'number' ? fmt(v) : v}"`)
    .join(' ');
  return body ? `<${name} ${parts}>${body}</${name}>` : `<${name} ${parts}/>`;
}

export function fmt(v: number): string {
  // fixed short representation keeps output byte-stable
  return Number.isInteger(v) ? String(v) : v.toPrecision(8).replace(/\.?0+$/, '');
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" ` +
      `height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">` +
      this.parts.join('') +
      '</svg>'
    );
  }
}

/** Linear scale mapping [d0, d1] to [r0, r1]. */
export function scale(d0: number, d1: number, r0: number, r1: number) {
  const k = d1 !== d0 ? (r1 - r0) / (d1 - d0) : 0;
  return (v: number) => r0 + (v - d0) * k;
}

export function axisTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const rawStep = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= count) ?? mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-9; v += step) {
    ticks.push(Number(v.toFixed(10)));
  }
  return ticks;
}
