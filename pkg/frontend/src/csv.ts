/**
 * Strict parsing of risk-curve CSV files.
 *
 * The expected schema is exactly the header written by the analytic
 * harness; any deviation (missing, renamed, reordered, or extra
 * column, non-numeric cell, fewer than two data rows) is a hard error
 * naming the offending column or row. Rows are returned sorted by
 * axis value so shuffled files render identically.
 */

export const CURVE_HEADER = [
  "axis_value",
  "oracle",
  "supervised_full",
  "supervised_labeled",
  "unsupervised",
  "semi_supervised",
  "q_star",
] as const;

export type CurveColumn = (typeof CURVE_HEADER)[number];

export const SERIES_COLUMNS: readonly CurveColumn[] = [
  "oracle",
  "supervised_full",
  "supervised_labeled",
  "unsupervised",
  "semi_supervised",
];

export interface CurveRow {
  axis_value: number;
  oracle: number;
  supervised_full: number;
  supervised_labeled: number;
  unsupervised: number;
  semi_supervised: number;
  q_star: number;
}

export class CsvSchemaError extends Error {}

function parseCell(raw: string, column: string, line: number): number {
  // Number() accepts the harness's plain and exponent-form decimals and
  // nothing sloppier (empty strings and stray text become NaN).
  const value = raw.trim() === "" ? NaN : Number(raw);
  if (!Number.isFinite(value)) {
    throw new CsvSchemaError(
      `line ${line}: column "${column}" has non-numeric value "${raw}"`,
    );
  }
  return value;
}

export function parseCurveCsv(text: string): CurveRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new CsvSchemaError("empty file");
  }
  const header = lines[0].split(",").map((c) => c.trim());
  for (let i = 0; i < CURVE_HEADER.length; i++) {
    if (i >= header.length) {
      throw new CsvSchemaError(`missing column "${CURVE_HEADER[i]}"`);
    }
    if (header[i] !== CURVE_HEADER[i]) {
      throw new CsvSchemaError(
        `expected column ${i + 1} to be "${CURVE_HEADER[i]}", found "${header[i]}"`,
      );
    }
  }
  if (header.length > CURVE_HEADER.length) {
    throw new CsvSchemaError(`unexpected extra column "${header[CURVE_HEADER.length]}"`);
  }

  const rows: CurveRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== CURVE_HEADER.length) {
      throw new CsvSchemaError(
        `line ${i + 1}: expected ${CURVE_HEADER.length} cells, found ${cells.length}`,
      );
    }
    const row = {} as Record<CurveColumn, number>;
    CURVE_HEADER.forEach((column, j) => {
      row[column] = parseCell(cells[j], column, i + 1);
    });
    rows.push(row as CurveRow);
  }
  if (rows.length < 2) {
    throw new CsvSchemaError(`need at least 2 data rows, found ${rows.length}`);
  }
  return rows.slice().sort((a, b) => a.axis_value - b.axis_value);
}
