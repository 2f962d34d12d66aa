/**
 * Two-panel SVG figure of the five risk curves.
 *
 * Rendering is pure string generation: fixed layout, fixed palette, no
 * timestamps, no randomness, so identical inputs give byte-identical
 * output. The renderer does no numerical work beyond scaling to pixel
 * coordinates; the science lives entirely in the CSV values.
 */

import { CurveRow, SERIES_COLUMNS, CurveColumn } from "./csv.js";

export interface PanelSpec {
  rows: CurveRow[];
  title: string;
  xLabel: string;
}

export const SERIES_LABELS: Record<string, string> = {
  oracle: "oracle",
  supervised_full: "supervised (all labels)",
  supervised_labeled: "supervised (labeled only)",
  unsupervised: "unsupervised",
  semi_supervised: "semi-supervised",
};

export const SERIES_COLORS: Record<string, string> = {
  oracle: "#444444",
  supervised_full: "#1f77b4",
  supervised_labeled: "#2ca02c",
  unsupervised: "#d62728",
  semi_supervised: "#9467bd",
};

// Risk of a balanced binary problem lives in [0, 1/2]; the y axis is
// pinned to that range on both panels.
export const Y_MIN = 0;
export const Y_MAX = 0.5;

const PANEL_WIDTH = 560;
const PANEL_HEIGHT = 420;
const MARGIN = { top: 42, right: 16, bottom: 52, left: 62 };
const PANEL_GAP = 24;

const fmt = (x: number) => (Math.abs(x) < 1e-12 ? "0" : x.toFixed(2).replace(/\.?0+$/, ""));
const px = (x: number) => x.toFixed(2);

/** Tick positions at a 1/2/5 x 10^k step covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const rawStep = span / Math.max(1, target - 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = 10 * power;
  for (const mult of [1, 2, 5]) {
    if (mult * power >= rawStep) {
      step = mult * power;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push(Math.abs(t) < 1e-12 ? 0 : t);
  }
  return ticks;
}

function linearScale(d0: number, d1: number, r0: number, r1: number) {
  const slope = (r1 - r0) / (d1 - d0);
  return (x: number) => r0 + (x - d0) * slope;
}

function renderPanel(spec: PanelSpec, index: number, xOffset: number): string {
  const innerW = PANEL_WIDTH - MARGIN.left - MARGIN.right;
  const innerH = PANEL_HEIGHT - MARGIN.top - MARGIN.bottom;
  const xs = spec.rows.map((r) => r.axis_value);
  const xMin = xs[0];
  const xMax = xs[xs.length - 1];
  const xScale = linearScale(xMin, xMax, 0, innerW);
  const yScale = linearScale(Y_MIN, Y_MAX, innerH, 0);

  const parts: string[] = [];
  parts.push(`<g class="panel" id="panel-${index}" transform="translate(${xOffset},0)">`);
  parts.push(
    `<text class="panel-title" x="${px(MARGIN.left + innerW / 2)}" y="24" text-anchor="middle" font-size="15" font-weight="bold">${spec.title}</text>`,
  );
  parts.push(`<g transform="translate(${MARGIN.left},${MARGIN.top})">`);
  parts.push(
    `<rect class="plot-area" x="0" y="0" width="${innerW}" height="${innerH}" fill="none" stroke="#333" stroke-width="1"/>`,
  );

  for (const t of niceTicks(xMin, xMax)) {
    const x = px(xScale(t));
    parts.push(`<line x1="${x}" y1="${innerH}" x2="${x}" y2="${innerH + 5}" stroke="#333"/>`);
    parts.push(
      `<text class="x-tick" x="${x}" y="${innerH + 20}" text-anchor="middle" font-size="11">${fmt(t)}</text>`,
    );
  }
  for (const t of niceTicks(Y_MIN, Y_MAX)) {
    const y = px(yScale(t));
    parts.push(`<line x1="-5" y1="${y}" x2="0" y2="${y}" stroke="#333"/>`);
    parts.push(
      `<line class="grid" x1="0" y1="${y}" x2="${innerW}" y2="${y}" stroke="#ddd" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text class="y-tick" x="-9" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text class="x-label" x="${px(innerW / 2)}" y="${innerH + 40}" text-anchor="middle" font-size="13">${spec.xLabel}</text>`,
  );
  parts.push(
    `<text class="y-label" transform="translate(${-44},${px(innerH / 2)}) rotate(-90)" text-anchor="middle" font-size="13">risk</text>`,
  );

  for (const column of SERIES_COLUMNS) {
    const points = spec.rows
      .map((r) => `${px(xScale(r.axis_value))},${px(yScale(r[column as CurveColumn]))}`)
      .join(" ");
    parts.push(
      `<polyline class="series" data-series="${column}" points="${points}" fill="none" stroke="${SERIES_COLORS[column]}" stroke-width="1.8"/>`,
    );
  }

  // legend, top-right inside the plot area
  const legendX = innerW - 196;
  parts.push(`<g class="legend" transform="translate(${legendX},8)">`);
  parts.push(
    `<rect x="0" y="0" width="188" height="${SERIES_COLUMNS.length * 17 + 8}" fill="#ffffff" fill-opacity="0.85" stroke="#999" stroke-width="0.5"/>`,
  );
  SERIES_COLUMNS.forEach((column, i) => {
    const y = 13 + 17 * i;
    parts.push(
      `<line x1="7" y1="${y}" x2="29" y2="${y}" stroke="${SERIES_COLORS[column]}" stroke-width="2.2"/>`,
    );
    parts.push(
      `<text class="legend-label" x="35" y="${y + 3.5}" font-size="11">${SERIES_LABELS[column]}</text>`,
    );
  });
  parts.push(`</g>`);

  parts.push(`</g>`);
  parts.push(`</g>`);
  return parts.join("\n");
}

export function renderFigureSvg(left: PanelSpec, right: PanelSpec): string {
  const width = 2 * PANEL_WIDTH + PANEL_GAP;
  const height = PANEL_HEIGHT;
  const body = [
    renderPanel(left, 0, 0),
    renderPanel(right, 1, PANEL_WIDTH + PANEL_GAP),
  ].join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}
