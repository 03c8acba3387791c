/** Figure recipes: map the CLI's CSV/JSON artifacts onto comparison panels.
 * Strictly display: values are plotted exactly as parsed, never recomputed.
 */

import { readFileSync } from "node:fs";
import {
  columnValues,
  extrema,
  pairedColumns,
  parseCsv,
  Table,
} from "./csv.js";
import { PanelSpec, renderPanel, Series } from "./svg.js";

export interface RenderResult {
  svg: string;
  /** per-series y extrema, exactly as parsed from the inputs */
  seriesExtrema: Record<string, { min: number; max: number }>;
}

export interface Recipe {
  name: string;
  describe: string;
  render(inputPaths: string[]): RenderResult;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

function finish(spec: PanelSpec): RenderResult {
  const seriesExtrema: RenderResult["seriesExtrema"] = {};
  for (const s of spec.series) {
    seriesExtrema[s.label] = extrema(s.points.map(([, y]) => y));
  }
  return { svg: renderPanel(spec), seriesExtrema };
}

function loadTable(path: string): Table {
  return parseCsv(readFileSync(path, "utf-8"));
}

function overlay(
  table: Table,
  xName: string,
  yNames: string[],
  title: string,
  xLabel: string,
  yLabel: string,
  scatterFirst: boolean,
  referenceY?: number[],
): RenderResult {
  const series: Series[] = yNames.map((name, i) => ({
    label: name,
    points: pairedColumns(table, xName, name),
    kind: scatterFirst && i === 0 ? "scatter" : "line",
    color: PALETTE[i % PALETTE.length],
  }));
  return finish({ title, xLabel, yLabel, series, referenceY });
}

/** coupling-coefficient sweep: exact values as points, approximations as
 * curves (the squared/mean columns ride on the same axes when present) */
function cgSweep(paths: string[]): RenderResult {
  const table = loadTable(paths[0]);
  const candidates = [
    "exact",
    "wkb",
    "allowed",
    "forbidden",
    "exact_sq",
    "avg",
    "avg_variant",
  ];
  const present = candidates.filter((c) => table.columns.includes(c));
  if (!present.includes("exact")) {
    // raise the canonical missing-column error
    columnValues(table, "exact");
  }
  return overlay(
    table,
    "j3",
    present,
    "coupling coefficients vs j3",
    "j3",
    "coefficient",
    true,
  );
}

/** rotation matrix element overlay across a theta sweep */
function wigdOverlay(paths: string[]): RenderResult {
  const table = loadTable(paths[0]);
  const names = ["exact", "wkb", "asym"].filter((c) =>
    table.columns.includes(c),
  );
  if (!names.includes("exact")) {
    columnValues(table, "exact");
  }
  return overlay(
    table,
    "theta",
    names,
    "rotation matrix element vs theta",
    "theta (rad)",
    "d element",
    true,
  );
}

/** corrected polar angles: prediction curve over measured lobe points */
function correctedAngles(paths: string[]): RenderResult {
  const table = loadTable(paths[0]);
  const series: Series[] = [
    {
      label: "theta_measured",
      points: pairedColumns(table, "m", "theta_measured"),
      kind: "scatter",
      color: PALETTE[0],
    },
    {
      label: "theta_corrected",
      points: pairedColumns(table, "m", "theta_corrected"),
      kind: "line",
      color: PALETTE[1],
    },
  ];
  return finish({
    title: "corrected polar angle vs projection",
    xLabel: "m",
    yLabel: "polar angle (rad)",
    series,
  });
}

interface WidthsPayload {
  products: Record<string, number>;
}

interface ManifestPayload {
  parameters: Record<string, string>;
}

/** uncertainty products against the width parameter, one widths-report JSON
 * (plus its run manifest for the parameter value) per point */
function uncertaintyProducts(paths: string[]): RenderResult {
  const keys = ["dm_dphi", "dj_dchi", "jsin_dtheta_dphi"];
  const byKey: Record<string, Array<[number, number]>> = {};
  for (const key of keys) byKey[key] = [];
  for (const path of paths) {
    const widths = JSON.parse(readFileSync(path, "utf-8")) as WidthsPayload;
    const manifest = JSON.parse(
      readFileSync(path + ".manifest.json", "utf-8"),
    ) as ManifestPayload;
    const dm = Number(manifest.parameters["dm"]);
    if (!Number.isFinite(dm)) {
      throw new Error(`manifest for ${path} lacks a numeric dm parameter`);
    }
    for (const key of keys) {
      const value = widths.products[key];
      if (value === undefined) {
        throw new Error(`missing product '${key}' in ${path}`);
      }
      byKey[key].push([dm, value]);
    }
  }
  const series: Series[] = keys.map((key, i) => ({
    label: key,
    points: byKey[key].sort((a, b) => a[0] - b[0]),
    kind: "scatter",
    color: PALETTE[i],
  }));
  return finish({
    title: "angular uncertainty products vs width parameter",
    xLabel: "dm",
    yLabel: "product (hbar = 1)",
    series,
    referenceY: [0.5],
  });
}

export const RECIPES: Record<string, Recipe> = {
  "cg-sweep": {
    name: "cg-sweep",
    describe: "coupling coefficients and their approximations vs j3",
    render: cgSweep,
  },
  "wigd-overlay": {
    name: "wigd-overlay",
    describe: "rotation matrix element approximations vs theta",
    render: wigdOverlay,
  },
  "corrected-angles": {
    name: "corrected-angles",
    describe: "rectified polar-angle prediction vs measured lobe",
    render: correctedAngles,
  },
  "uncertainty-products": {
    name: "uncertainty-products",
    describe: "width products from widths-report JSONs (+ manifests)",
    render: uncertaintyProducts,
  },
};
