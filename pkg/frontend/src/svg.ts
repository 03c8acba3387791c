/** Minimal deterministic SVG plotting: linear scales, axes with ticks,
 * polyline and scatter series, and horizontal reference lines. No DOM, no
 * randomness; identical inputs yield identical bytes. */

export interface Series {
  label: string;
  points: Array<[number, number]>;
  kind: "line" | "scatter";
  color: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  referenceY?: number[];
}

const WIDTH = 560;
const HEIGHT = 360;
const MARGIN = { left: 64, right: 16, top: 36, bottom: 46 };

function fmt(value: number): string {
  // fixed short form keeps output byte-stable across platforms
  return Number(value.toPrecision(6)).toString();
}

export interface LinearScale {
  domain: [number, number];
  range: [number, number];
  apply(value: number): number;
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1.0;
  return {
    domain,
    range,
    apply: (value: number) => r0 + ((value - d0) / span) * (r1 - r0),
  };
}

function ticks(lo: number, hi: number, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i <= count; i++) {
    out.push(lo + ((hi - lo) * i) / count);
  }
  return out;
}

export function dataBounds(series: Series[]): {
  x: [number, number];
  y: [number, number];
} {
  let xs: number[] = [];
  let ys: number[] = [];
  for (const s of series) {
    for (const [x, y] of s.points) {
      xs.push(x);
      ys.push(y);
    }
  }
  if (xs.length === 0) {
    throw new Error("no points to plot");
  }
  const min = (a: number[]) => a.reduce((p, c) => Math.min(p, c));
  const max = (a: number[]) => a.reduce((p, c) => Math.max(p, c));
  return { x: [min(xs), max(xs)], y: [min(ys), max(ys)] };
}

export function renderPanel(spec: PanelSpec): string {
  const bounds = dataBounds(spec.series);
  const yRef = spec.referenceY ?? [];
  const yLo = Math.min(bounds.y[0], ...yRef);
  const yHi = Math.max(bounds.y[1], ...yRef);
  const pad = (yHi - yLo || 1) * 0.05;
  const sx = linearScale(bounds.x, [MARGIN.left, WIDTH - MARGIN.right]);
  const sy = linearScale(
    [yLo - pad, yHi + pad],
    [HEIGHT - MARGIN.bottom, MARGIN.top],
  );
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">${spec.title}</text>`,
  );
  // axes
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
  );
  for (const t of ticks(bounds.x[0], bounds.x[1], 5)) {
    const px = sx.apply(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 4}" stroke="black"/>`,
      `<text x="${fmt(px)}" y="${y0 + 18}" text-anchor="middle" font-family="sans-serif" font-size="10">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(yLo - pad, yHi + pad, 5)) {
    const py = sy.apply(t);
    parts.push(
      `<line x1="${x0 - 4}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="black"/>`,
      `<text x="${x0 - 8}" y="${fmt(py + 3)}" text-anchor="end" font-family="sans-serif" font-size="10">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 8}" text-anchor="middle" font-family="sans-serif" font-size="12">${spec.xLabel}</text>`,
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 ${(y0 + y1) / 2})">${spec.yLabel}</text>`,
  );
  for (const ref of yRef) {
    const py = sy.apply(ref);
    parts.push(
      `<line x1="${x0}" y1="${fmt(py)}" x2="${x1}" y2="${fmt(py)}" stroke="gray" stroke-dasharray="6 3"/>`,
    );
  }
  let legendY = MARGIN.top + 12;
  for (const s of spec.series) {
    const mapped = s.points.map(
      ([x, y]) => [sx.apply(x), sy.apply(y)] as [number, number],
    );
    if (s.kind === "line") {
      const path = mapped.map(([px, py]) => `${fmt(px)},${fmt(py)}`).join(" ");
      parts.push(
        `<polyline fill="none" stroke="${s.color}" stroke-width="1.5" points="${path}"/>`,
      );
    } else {
      for (const [px, py] of mapped) {
        parts.push(
          `<circle cx="${fmt(px)}" cy="${fmt(py)}" r="2.4" fill="none" stroke="${s.color}"/>`,
        );
      }
    }
    parts.push(
      `<text x="${x1 - 6}" y="${legendY}" text-anchor="end" font-family="sans-serif" font-size="10" fill="${s.color}">${s.label}</text>`,
    );
    legendY += 13;
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
