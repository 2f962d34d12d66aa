#!/usr/bin/env node
/**
 * Command line: render --left <csv> --right <csv> --out <path> [--format svg|png]
 *
 * Reads two risk-curve CSVs (left and right panel), validates them
 * against the strict schema, and writes a two-panel figure. The
 * default output is SVG; PNG requires the optional @resvg/resvg-js
 * dependency. Optional --left-label/--right-label and
 * --left-xlabel/--right-xlabel flags override the panel texts.
 *
 * Exit codes: 0 success, 1 parse or I/O failure, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { CsvSchemaError, parseCurveCsv } from "./csv.js";
import { PanelSpec, renderFigureSvg } from "./figure.js";

export interface RenderOptions {
  left: string;
  right: string;
  out: string;
  format?: "svg" | "png";
  leftLabel?: string;
  rightLabel?: string;
  leftXLabel?: string;
  rightXLabel?: string;
}

async function rasterize(svg: string): Promise<Buffer> {
  let resvg;
  try {
    resvg = await import("@resvg/resvg-js");
  } catch {
    throw new Error(
      "PNG output needs the optional dependency @resvg/resvg-js; install it or use --format svg",
    );
  }
  const rendered = new resvg.Resvg(svg, { fitTo: { mode: "width", value: 2272 } }).render();
  return rendered.asPng();
}

export async function render(options: RenderOptions): Promise<void> {
  const leftRows = parseCurveCsv(readFileSync(options.left, "utf-8"));
  const rightRows = parseCurveCsv(readFileSync(options.right, "utf-8"));
  const left: PanelSpec = {
    rows: leftRows,
    title: options.leftLabel ?? "risk vs labeled fraction",
    xLabel: options.leftXLabel ?? "labeled fraction",
  };
  const right: PanelSpec = {
    rows: rightRows,
    title: options.rightLabel ?? "risk vs inverse noise",
    xLabel: options.rightXLabel ?? "inverse noise 1/sigma2",
  };
  const svg = renderFigureSvg(left, right);
  if ((options.format ?? "svg") === "png") {
    writeFileSync(options.out, await rasterize(svg));
  } else {
    writeFileSync(options.out, svg, "utf-8");
  }
}

export async function main(argv: string[]): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        left: { type: "string" },
        right: { type: "string" },
        out: { type: "string" },
        format: { type: "string", default: "svg" },
        "left-label": { type: "string" },
        "right-label": { type: "string" },
        "left-xlabel": { type: "string" },
        "right-xlabel": { type: "string" },
      },
    }));
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  if (!values.left || !values.right || !values.out) {
    console.error("usage: render --left <csv> --right <csv> --out <path> [--format svg|png]");
    return 2;
  }
  if (values.format !== "svg" && values.format !== "png") {
    console.error(`usage error: unknown format "${values.format}"`);
    return 2;
  }
  try {
    await render({
      left: values.left,
      right: values.right,
      out: values.out,
      format: values.format as "svg" | "png",
      leftLabel: values["left-label"],
      rightLabel: values["right-label"],
      leftXLabel: values["left-xlabel"],
      rightXLabel: values["right-xlabel"],
    });
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(`${(err as Error).message}`);
    }
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
