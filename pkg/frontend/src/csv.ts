/** Strict parser for the CLI's CSV dialect: one header row, comma separated,
 * no quoting, empty cells mark values a method refused to produce. */

export interface Table {
  columns: string[];
  /** row-major cells; null where the producer left the cell empty */
  rows: (number | null)[][];
}

export class MissingColumnError extends Error {
  constructor(public readonly column: string, available: string[]) {
    super(`missing column '${column}' (have: ${available.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: (number | null)[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new Error(
        `row ${i} has ${cells.length} cells, header has ${columns.length}`,
      );
    }
    rows.push(
      cells.map((cell) => {
        const trimmed = cell.trim();
        if (trimmed === "") return null;
        const value = Number(trimmed);
        if (!Number.isFinite(value)) {
          // region tags and similar labels ride along as non-numeric cells
          return NaN;
        }
        return value;
      }),
    );
  }
  return { columns, rows };
}

export function columnIndex(table: Table, name: string): number {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new MissingColumnError(name, table.columns);
  }
  return index;
}

/** Numeric values of a column, dropping empty cells. */
export function columnValues(table: Table, name: string): number[] {
  const index = columnIndex(table, name);
  return table.rows
    .map((row) => row[index])
    .filter((v): v is number => v !== null && Number.isFinite(v));
}

/** Paired (x, y) points where both cells are present. */
export function pairedColumns(
  table: Table,
  xName: string,
  yName: string,
): Array<[number, number]> {
  const xi = columnIndex(table, xName);
  const yi = columnIndex(table, yName);
  const out: Array<[number, number]> = [];
  for (const row of table.rows) {
    const x = row[xi];
    const y = row[yi];
    if (x !== null && y !== null && Number.isFinite(x) && Number.isFinite(y)) {
      out.push([x, y]);
    }
  }
  return out;
}

export function extrema(values: number[]): { min: number; max: number } {
  if (values.length === 0) {
    throw new Error("no values to take extrema of");
  }
  let min = values[0];
  let max = values[0];
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { min, max };
}
