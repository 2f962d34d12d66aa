export { CURVE_HEADER, SERIES_COLUMNS, CsvSchemaError, parseCurveCsv } from "./csv.js";
export type { CurveRow } from "./csv.js";
export { SERIES_COLORS, SERIES_LABELS, Y_MAX, Y_MIN, niceTicks, renderFigureSvg } from "./figure.js";
export type { PanelSpec } from "./figure.js";
export { main, render } from "./render.js";
export type { RenderOptions } from "./render.js";
