/**
 * Reader for the diracwalk scan CSV format: leading `# key=value` metadata
 * comments, a header row, then 17-significant-digit float rows.
 */

import { readFileSync } from 'fs';

export interface ScanTable {
  meta: Record<string, string>;
  columns: string[];
  rows: number[][];
}

export function parseScanCsv(text: string): ScanTable {
  const meta: Record<string, string> = {};
  const rows: number[][] = [];
  let columns: string[] = [];
  for (const raw of text.split('\n')) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith('#')) {
      const body = line.slice(1).trim();
      const eq = body.indexOf('=');
      if (eq > 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      continue;
    }
    if (columns.length === 0) {
      columns = line.split(',');
      continue;
    }
    rows.push(line.split(',').map(Number));
  }
  return { meta, columns, rows };
}

export function readScanCsv(path: string): ScanTable {
  return parseScanCsv(readFileSync(path, 'utf8'));
}

export function column(table: ScanTable, name: string): number[] {
  const i = table.columns.indexOf(name);
  if (i < 0) {
    throw new Error(`missing column '${name}' in scan CSV (have: ${table.columns.join(', ')})`);
  }
  return table.rows.map((r) => r[i]);
}

export function energyColumns(table: ScanTable): string[] {
  return table.columns.filter((c) => /^e\d+_dt$/.test(c));
}

export function metaNumber(table: ScanTable, key: string): number {
  const v = table.meta[key];
  if (v === undefined) throw new Error(`missing metadata '${key}' in scan CSV`);
  const x = Number(v);
  if (!Number.isFinite(x)) throw new Error(`metadata '${key}'='${v}' is not a number`);
  return x;
}
