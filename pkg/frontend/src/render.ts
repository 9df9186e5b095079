import { readFileSync } from 'fs';

import { divergingColor } from './colormap.js';
import { column, readCsv, Table } from './csv.js';
import { Svg, axisTicks, fmt, scale, tag } from './svg.js';

export type FigureKind = 'distribution' | 'wigner' | 'loss-curves';

export interface FigureRequest {
  kind: FigureKind;
  csvPath: string;
  metaPath?: string;
  /** overlay toggles for distribution figures */
  spacingDots?: boolean;
  envelopePath?: string;
}

interface Meta {
  predicted_spacing?: number;
  config?: { shaping?: { n_center?: number } };
  loss?: { strength_to_loss?: number };
}

const W = 720;
const H = 420;
const MARGIN = { left: 56, right: 16, top: 18, bottom: 40 };

function frame(svg: Svg, xlo: number, xhi: number, ylo: number, yhi: number,
               xlabel: string, ylabel: string) {
  const sx = scale(xlo, xhi, MARGIN.left, W - MARGIN.right);
  const sy = scale(ylo, yhi, H - MARGIN.bottom, MARGIN.top);
  svg.add(tag('rect', { x: MARGIN.left, y: MARGIN.top,
                        width: W - MARGIN.left - MARGIN.right,
                        height: H - MARGIN.top - MARGIN.bottom,
                        fill: 'white', stroke: '#333', 'stroke-width': 1 }));
  for (const t of axisTicks(xlo, xhi)) {
    svg.add(tag('line', { x1: sx(t), x2: sx(t), y1: H - MARGIN.bottom,
                          y2: H - MARGIN.bottom + 4, stroke: '#333' }));
    svg.add(tag('text', { x: sx(t), y: H - MARGIN.bottom + 16,
                          'text-anchor': 'middle', 'font-size': 11 }, fmt(t)));
  }
  for (const t of axisTicks(ylo, yhi, 5)) {
    svg.add(tag('line', { x1: MARGIN.left - 4, x2: MARGIN.left, y1: sy(t),
                          y2: sy(t), stroke: '#333' }));
    svg.add(tag('text', { x: MARGIN.left - 7, y: sy(t) + 4,
                          'text-anchor': 'end', 'font-size': 11 }, fmt(t)));
  }
  svg.add(tag('text', { x: (MARGIN.left + W - MARGIN.right) / 2, y: H - 8,
                        'text-anchor': 'middle', 'font-size': 12 }, xlabel));
  svg.add(tag('text', { x: 14, y: (MARGIN.top + H - MARGIN.bottom) / 2,
                        'text-anchor': 'middle', 'font-size': 12,
                        transform: `rotate(-90 14 ${(MARGIN.top + H - MARGIN.bottom) / 2})` },
               ylabel));
  return { sx, sy };
}

export function renderDistribution(req: FigureRequest): string {
  const table = readCsv(req.csvPath);
  const m = column(table, 'm');
  const p = column(table, 'probability');
  const meta: Meta = req.metaPath
    ? JSON.parse(readFileSync(req.metaPath, 'utf8'))
    : {};
  const ymax = Math.max(...p) * 1.12;
  const svg = new Svg(W, H);
  const { sx, sy } = frame(svg, m[0], m[m.length - 1], 0, ymax,
                           'photon number m', 'P(m)');
  const path = m.map((mi, i) => `${i ? 'L' : 'M'}${fmt(sx(mi))},${fmt(sy(p[i]))}`).join('');
  svg.add(tag('path', { d: path, fill: 'none', stroke: '#1f77b4',
                        'stroke-width': 1.5, class: 'distribution' }));
  if (req.envelopePath) {
    const env = readCsv(req.envelopePath);
    const ev = column(env, 'envelope');
    const em = column(env, 'm');
    // rescale the unit-sum envelope to the distribution's peak for overlay
    const k = Math.max(...p) / Math.max(...ev);
    const epath = em
      .map((mi, i) => `${i ? 'L' : 'M'}${fmt(sx(mi))},${fmt(sy(ev[i] * k))}`)
      .join('');
    svg.add(tag('path', { d: epath, fill: 'none', stroke: '#2ca02c',
                          'stroke-width': 1.2, 'stroke-dasharray': '4 2',
                          class: 'envelope' }));
  }
  const spacing = meta.predicted_spacing;
  const center = meta.config?.shaping?.n_center;
  if (req.spacingDots !== false && spacing && center !== undefined &&
      Number.isFinite(spacing)) {
    for (let k = -Math.ceil(center / spacing);
         center + k * spacing <= m[m.length - 1] + 1e-9; k++) {
      const pos = center + k * spacing;
      if (pos < m[0] - 1e-9) continue;
      const nearest = Math.min(m.length - 1, Math.max(0, Math.round(pos)));
      svg.add(tag('circle', { cx: sx(pos), cy: sy(p[nearest]), r: 4,
                              fill: '#ff7f0e', stroke: 'none',
                              class: 'spacing-dot', 'data-m': fmt(pos) }));
    }
  }
  return svg.toString();
}

export function renderWigner(req: FigureRequest): string {
  const table = readCsv(req.csvPath);
  const xs = column(table, 'x');
  const ps = column(table, 'p');
  const ws = column(table, 'w');
  const xu = [...new Set(xs)].sort((a, b) => a - b);
  const pu = [...new Set(ps)].sort((a, b) => a - b);
  const absMax = Math.max(...ws.map(Math.abs));
  const svg = new Svg(W, H);
  const { sx, sy } = frame(svg, xu[0], xu[xu.length - 1], pu[0], pu[pu.length - 1],
                           'x quadrature', 'p quadrature');
  const cw = (sx(xu[1]) - sx(xu[0])) || 1;
  const ch = (sy(pu[0]) - sy(pu[1])) || 1;
  const cells: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    // positive values blue, negative red, per the signed diverging scale
    cells.push(tag('rect', {
      x: sx(xs[i]) - cw / 2,
      y: sy(ps[i]) - ch / 2,
      width: cw * 1.02,
      height: ch * 1.02,
      fill: divergingColor(ws[i], absMax),
      class: 'wigner-cell',
    }));
  }
  svg.add(tag('g', { class: 'heatmap' }, cells.join('')));
  return svg.toString();
}

export function renderLossCurves(req: FigureRequest): string {
  const table = readCsv(req.csvPath);
  const gt = column(table, 'gamma_t');
  const inf = column(table, 'infidelity');
  // a sweep table may interleave several strength-to-loss ratios
  let series: Map<string, Array<[number, number]>>;
  const ratioCol = table.header.find((h) => h.endsWith('strength_to_loss'));
  if (ratioCol) {
    const ratios = column(table, ratioCol);
    series = new Map();
    ratios.forEach((r, i) => {
      const key = fmt(r);
      if (!series.has(key)) series.set(key, []);
      series.get(key)!.push([gt[i], inf[i]]);
    });
  } else {
    series = new Map([['run', gt.map((g, i) => [g, inf[i]] as [number, number])]]);
  }
  const ymax = Math.max(...inf) * 1.15;
  const svg = new Svg(W, H);
  const { sx, sy } = frame(svg, 0, Math.max(...gt) * 1.05, 0, ymax,
                           'gamma * t', '1 - F');
  const colors = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd'];
  let idx = 0;
  for (const [name, pts] of series) {
    pts.sort((a, b) => a[0] - b[0]);
    const path = pts.map(([g, f], i) => `${i ? 'L' : 'M'}${fmt(sx(g))},${fmt(sy(f))}`).join('');
    svg.add(tag('path', { d: path, fill: 'none', stroke: colors[idx % colors.length],
                          'stroke-width': 1.6, class: 'loss-curve',
                          'data-series': name }));
    idx += 1;
  }
  return svg.toString();
}

export function render(req: FigureRequest): string {
  switch (req.kind) {
    case 'distribution':
      return renderDistribution(req);
    case 'wigner':
      return renderWigner(req);
    case 'loss-curves':
      return renderLossCurves(req);
    default:
      throw new Error(`unknown figure kind ${String(req.kind)}`);
  }
}
