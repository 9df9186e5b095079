import { readFileSync } from 'fs';

export interface Table {
  header: string[];
  rows: number[][];
}

/** Parse a numeric CSV with a single header line (the simulator's output format). */
export function parseCsv(text: string): Table {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length < 1) {
    throw new Error('empty CSV');
  }
  const header = lines[0].split(',').map((s) => s.trim());
  const rows: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    if (lines[i].length === 0) continue;
    const cells = lines[i].split(',').map(Number);
    if (cells.length !== header.length || cells.some((v) => Number.isNaN(v))) {
      throw new Error(`CSV row ${i + 1} does not match header ${header.join(',')}`);
    }
    rows.push(cells);
  }
  return { header, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, 'utf8'));
}

export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`CSV has no column ${name} (have: ${table.header.join(', ')})`);
  }
  return table.rows.map((r) => r[idx]);
}
