/**
 * Figure construction from diracwalk scan CSVs.
 *
 * compare-1d puts every dataset on the common physical-momentum axis
 * x = p*dx * cos(theta) (each walk simulates light speed c = v cos(theta),
 * so equal x means equal physical momentum) and measures the pointwise
 * band agreement inside a small window before anything is drawn.
 */

import { ScanTable, column, energyColumns, metaNumber, readScanCsv } from './csv';
import { Figure, divergingColor } from './svg';

export type FigureKind = 'band-1d' | 'compare-1d' | 'slice-3d' | 'surface-3d';

export interface PlotSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
  title?: string;
  labels?: string[];
  /** compare-1d: half-width of the agreement window in x (default 0.1) */
  agreementWindow?: number;
  /** compare-1d: fail rendering if the measured gap exceeds this */
  maxAgreementGap?: number;
  /** surface-3d: symmetric color-scale cap (default pi/2) */
  colorCap?: number;
}

export interface RenderResult {
  svg: string;
  /** compare-1d only: max pointwise band gap inside the window */
  agreementGap?: number;
  agreementWindow?: number;
}

const COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e'];

export function validateSpec(spec: PlotSpec): void {
  const kinds: FigureKind[] = ['band-1d', 'compare-1d', 'slice-3d', 'surface-3d'];
  if (!kinds.includes(spec.kind)) throw new Error(`unknown figure kind '${spec.kind}'`);
  if (!Array.isArray(spec.inputs) || spec.inputs.length === 0) {
    throw new Error('spec.inputs must list at least one CSV path');
  }
  if (!spec.output) throw new Error('spec.output is required');
  if (spec.kind === 'compare-1d' && spec.inputs.length !== 2) {
    throw new Error('compare-1d needs exactly two inputs: family scan, conventional scan');
  }
}

export function render(spec: PlotSpec): RenderResult {
  validateSpec(spec);
  switch (spec.kind) {
    case 'band-1d':
      return renderBand1d(spec);
    case 'compare-1d':
      return renderCompare1d(spec);
    case 'slice-3d':
      return renderSlice3d(spec);
    case 'surface-3d':
      return renderSurface3d(spec);
  }
}

function bandExtent(tables: ScanTable[], xcol: (t: ScanTable) => number[]): { xMin: number; xMax: number } {
  let xMin = Infinity;
  let xMax = -Infinity;
  for (const t of tables) {
    for (const x of xcol(t)) {
      xMin = Math.min(xMin, x);
      xMax = Math.max(xMax, x);
    }
  }
  return { xMin, xMax };
}

function renderBand1d(spec: PlotSpec): RenderResult {
  const table = readScanCsv(spec.inputs[0]);
  const p = column(table, 'p_dx');
  const fig = new Figure(
    { ...bandExtent([table], () => p), yMin: -Math.PI, yMax: Math.PI },
    spec.title ?? `dispersion (theta=${table.meta.theta}, mass_dt=${table.meta.mass_dt})`,
    'p dx',
    'E dt',
  );
  energyColumns(table).forEach((name, i) => {
    fig.polyline(p, column(table, name), COLORS[i % COLORS.length], i === 0 ? 'bands' : undefined);
  });
  fig.caption(`n=${table.meta.n}, max |E dt|=${table.meta.max_abs_energy}`);
  return { svg: fig.render() };
}

interface Curve {
  x: number[];
  upper: number[];
  lower: number[];
}

function rescaledCurve(table: ScanTable): Curve {
  const cos = Math.cos(metaNumber(table, 'theta'));
  const p = column(table, 'p_dx');
  const names = energyColumns(table);
  const lower = column(table, names[0]);
  const upper = column(table, names[names.length - 1]);
  const idx = p.map((_, i) => i).sort((a, b) => p[a] * cos - p[b] * cos);
  return {
    x: idx.map((i) => p[i] * cos),
    upper: idx.map((i) => upper[i]),
    lower: idx.map((i) => lower[i]),
  };
}

function interp(xs: number[], ys: number[], x: number): number {
  if (x <= xs[0]) return ys[0];
  if (x >= xs[xs.length - 1]) return ys[ys.length - 1];
  let lo = 0;
  let hi = xs.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (xs[mid] <= x) lo = mid;
    else hi = mid;
  }
  const u = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + u * (ys[hi] - ys[lo]);
}

/** Max pointwise upper/lower-band gap between the three datasets in |x| <= window. */
export function compareAgreement(
  family: ScanTable,
  conventional: ScanTable,
  window: number,
): number {
  const fam = rescaledCurve(family);
  const conv = rescaledCurve(conventional);
  const mass = metaNumber(family, 'mass_dt');
  let worst = 0;
  for (let i = 0; i < fam.x.length; i++) {
    const x = fam.x[i];
    if (Math.abs(x) > window) continue;
    const cont = Math.sqrt(x * x + mass * mass);
    const convUp = interp(conv.x, conv.upper, x);
    const convLo = interp(conv.x, conv.lower, x);
    worst = Math.max(
      worst,
      Math.abs(fam.upper[i] - convUp),
      Math.abs(fam.upper[i] - cont),
      Math.abs(convUp - cont),
      Math.abs(fam.lower[i] - convLo),
      Math.abs(fam.lower[i] + cont),
      Math.abs(convLo + cont),
    );
  }
  return worst;
}

function renderCompare1d(spec: PlotSpec): RenderResult {
  const family = readScanCsv(spec.inputs[0]);
  const conventional = readScanCsv(spec.inputs[1]);
  const window = spec.agreementWindow ?? 0.1;
  const gap = compareAgreement(family, conventional, window);
  if (spec.maxAgreementGap !== undefined && gap > spec.maxAgreementGap) {
    throw new Error(
      `band agreement gap ${gap.toExponential(3)} exceeds ${spec.maxAgreementGap} in |x| <= ${window}`,
    );
  }
  const fam = rescaledCurve(family);
  const conv = rescaledCurve(conventional);
  const mass = metaNumber(family, 'mass_dt');
  const xMax = Math.max(...fam.x.map(Math.abs));
  const fig = new Figure(
    { xMin: -xMax, xMax, yMin: -Math.PI, yMax: Math.PI },
    spec.title ?? 'family vs conventional vs continuum',
    'p dx cos(theta)  (physical momentum)',
    'E dt',
  );
  const labels = spec.labels ?? [
    `family theta=${family.meta.theta}`,
    'conventional theta=0',
    'continuum',
  ];
  fig.polyline(fam.x, fam.upper, COLORS[0], labels[0]);
  fig.polyline(fam.x, fam.lower, COLORS[0]);
  const convMask = conv.x.map((x, i) => [x, conv.upper[i], conv.lower[i]]).filter(
    ([x]) => Math.abs(x) <= xMax,
  );
  fig.polyline(convMask.map((r) => r[0]), convMask.map((r) => r[1]), COLORS[1], labels[1]);
  fig.polyline(convMask.map((r) => r[0]), convMask.map((r) => r[2]), COLORS[1]);
  const xs: number[] = [];
  for (let x = -xMax; x <= xMax; x += xMax / 200) xs.push(x);
  const contU = xs.map((x) => Math.sqrt(x * x + mass * mass));
  fig.polyline(xs, contU, COLORS[2], labels[2], '5,4');
  fig.polyline(xs, contU.map((y) => -y), COLORS[2], undefined, '5,4');
  fig.caption(
    `max band gap in |x| <= ${window}: ${gap.toExponential(3)} (mass_dt=${family.meta.mass_dt})`,
  );
  return { svg: fig.render(), agreementGap: gap, agreementWindow: window };
}

function renderSlice3d(spec: PlotSpec): RenderResult {
  const tables = spec.inputs.map(readScanCsv);
  const p = column(tables[0], 'px_dx');
  const fig = new Figure(
    { ...bandExtent(tables, (t) => column(t, 'px_dx')), yMin: -Math.PI, yMax: Math.PI },
    spec.title ?? `diagonal slice p_x=p_y=p_z (theta=${tables[0].meta.theta})`,
    'p dx (diagonal)',
    'E dt',
  );
  tables.forEach((table, ti) => {
    const label = spec.labels?.[ti] ?? `walk ${table.meta.walk}`;
    energyColumns(table).forEach((name, i) => {
      fig.polyline(
        column(table, 'px_dx'),
        column(table, name),
        COLORS[ti % COLORS.length],
        i === 0 ? label : undefined,
      );
    });
  });
  fig.hline(0, '#888', '2,4');
  fig.caption(`n=${tables[0].meta.n} points along the diagonal`);
  return { svg: fig.render() };
}

function renderSurface3d(spec: PlotSpec): RenderResult {
  const table = readScanCsv(spec.inputs[0]);
  const cap = spec.colorCap ?? Math.PI / 2;
  const px = column(table, 'px_dx');
  const py = column(table, 'py_dx');
  const pz = column(table, 'pz_dx');
  const names = energyColumns(table);
  const top = column(table, names[names.length - 1]);
  // the p_z plane closest to zero
  let zStar = pz[0];
  for (const z of pz) if (Math.abs(z) < Math.abs(zStar)) zStar = z;
  const xs = Array.from(new Set(px)).sort((a, b) => a - b);
  const spacing = xs.length > 1 ? xs[1] - xs[0] : 1;
  const fig = new Figure(
    {
      xMin: xs[0] - spacing / 2,
      xMax: xs[xs.length - 1] + spacing / 2,
      yMin: xs[0] - spacing / 2,
      yMax: xs[xs.length - 1] + spacing / 2,
    },
    spec.title ?? `top band at p_z=${zStar.toFixed(3)} (theta=${table.meta.theta})`,
    'p_x dx',
    'p_y dx',
  );
  for (let i = 0; i < px.length; i++) {
    if (pz[i] !== zStar) continue;
    fig.cell(
      px[i] - spacing / 2,
      px[i] + spacing / 2,
      py[i] - spacing / 2,
      py[i] + spacing / 2,
      divergingColor(top[i], cap),
    );
  }
  fig.caption(`color scale capped at |E dt| = ${cap.toFixed(4)}; max |E dt| = ${table.meta.max_abs_energy}`);
  return { svg: fig.render() };
}
