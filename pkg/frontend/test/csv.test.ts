import { describe, expect, it } from "vitest";
import {
  columnValues,
  extrema,
  MissingColumnError,
  pairedColumns,
  parseCsv,
} from "../src/csv.js";

const SAMPLE = "x,label,y\n1,allowed,2.5\n2,allowed,\n3,forbidden,-1\n";

describe("parseCsv", () => {
  it("parses headers, numbers, labels, and empty cells", () => {
    const table = parseCsv(SAMPLE);
    expect(table.columns).toEqual(["x", "label", "y"]);
    expect(table.rows).toHaveLength(3);
    expect(table.rows[0][0]).toBe(1);
    expect(table.rows[1][2]).toBeNull();
    expect(Number.isNaN(table.rows[0][1] as number)).toBe(true);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(/row 1/);
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("")).toThrow(/empty/);
  });
});

describe("column access", () => {
  it("drops empty cells from columnValues", () => {
    expect(columnValues(parseCsv(SAMPLE), "y")).toEqual([2.5, -1]);
  });

  it("pairs only complete rows", () => {
    expect(pairedColumns(parseCsv(SAMPLE), "x", "y")).toEqual([
      [1, 2.5],
      [3, -1],
    ]);
  });

  it("raises a named error for missing columns", () => {
    expect(() => columnValues(parseCsv(SAMPLE), "z")).toThrow(
      MissingColumnError,
    );
    expect(() => columnValues(parseCsv(SAMPLE), "z")).toThrow(/'z'/);
  });
});

describe("extrema", () => {
  it("computes min and max", () => {
    expect(extrema([3, -1, 2])).toEqual({ min: -1, max: 3 });
  });

  it("rejects empty input", () => {
    expect(() => extrema([])).toThrow();
  });
});
