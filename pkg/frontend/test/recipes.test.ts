import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { columnValues, extrema, parseCsv } from "../src/csv.js";
import { RECIPES } from "../src/recipes.js";

const FIXTURES = join(__dirname, "..", "fixtures");

function fixture(name: string): string {
  return join(FIXTURES, name);
}

describe("cg-sweep recipe", () => {
  it("renders the coupling sweep and reproduces the CSV extrema exactly", () => {
    const path = fixture("cg_fig_sweep.csv");
    const result = RECIPES["cg-sweep"].render([path]);
    expect(result.svg).toContain("<svg");
    expect(result.svg).toContain("polyline");
    const table = parseCsv(readFileSync(path, "utf-8"));
    for (const column of ["exact", "wkb", "avg", "allowed", "forbidden"]) {
      expect(result.seriesExtrema[column]).toEqual(
        extrema(columnValues(table, column)),
      );
    }
  });

  it("works on a low-j sweep with fewer method columns", () => {
    const result = RECIPES["cg-sweep"].render([fixture("cg_low_j.csv")]);
    expect(Object.keys(result.seriesExtrema).sort()).toEqual(["exact", "wkb"]);
  });

  it("is deterministic", () => {
    const a = RECIPES["cg-sweep"].render([fixture("cg_fig_sweep.csv")]);
    const b = RECIPES["cg-sweep"].render([fixture("cg_fig_sweep.csv")]);
    expect(a.svg).toBe(b.svg);
  });

  it("fails loudly when the exact column is absent", () => {
    const dir = mkdtempSync(join(tmpdir(), "figkit-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "j3,region,wkb\n1,allowed,0.5\n");
    expect(() => RECIPES["cg-sweep"].render([bad])).toThrow(/'exact'/);
  });
});

describe("wigd-overlay recipe", () => {
  it("plots every method column present", () => {
    const path = fixture("wigd_sweep.csv");
    const result = RECIPES["wigd-overlay"].render([path]);
    const table = parseCsv(readFileSync(path, "utf-8"));
    for (const column of ["exact", "wkb", "asym"]) {
      expect(result.seriesExtrema[column]).toEqual(
        extrema(columnValues(table, column)),
      );
    }
  });
});

describe("corrected-angles recipe", () => {
  it("overlays measured and corrected angles without altering values", () => {
    const path = fixture("corrected_angles.csv");
    const result = RECIPES["corrected-angles"].render([path]);
    const table = parseCsv(readFileSync(path, "utf-8"));
    expect(result.seriesExtrema["theta_measured"]).toEqual(
      extrema(columnValues(table, "theta_measured")),
    );
    expect(result.seriesExtrema["theta_corrected"]).toEqual(
      extrema(columnValues(table, "theta_corrected")),
    );
  });
});

describe("uncertainty-products recipe", () => {
  const paths = [1, 2, 3, 5].map((dm) => fixture(`widths_dm${dm}.json`));

  it("assembles products against the manifest width parameter", () => {
    const result = RECIPES["uncertainty-products"].render(paths);
    for (const key of ["dm_dphi", "dj_dchi", "jsin_dtheta_dphi"]) {
      const values = paths.map(
        (p) => JSON.parse(readFileSync(p, "utf-8")).products[key] as number,
      );
      expect(result.seriesExtrema[key]).toEqual(extrema(values));
    }
    // the hbar/2 reference line is part of the panel
    expect(result.svg).toContain("stroke-dasharray");
  });

  it("fails loudly when a manifest is missing", () => {
    const dir = mkdtempSync(join(tmpdir(), "figkit-"));
    const orphan = join(dir, "widths.json");
    writeFileSync(orphan, JSON.stringify({ products: { dm_dphi: 0.5 } }));
    expect(() => RECIPES["uncertainty-products"].render([orphan])).toThrow();
  });
});
