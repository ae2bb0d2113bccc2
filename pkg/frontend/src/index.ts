import { readFileSync, writeFileSync } from "fs";

import { parseResultsCsv } from "./csv";
import { buildFigure, FigureSpec } from "./figure";
import { renderSvg } from "./svg";

export { parseResultsCsv, REQUIRED_COLUMNS, ResultRow } from "./csv";
export { buildFigure, seriesColor, FigureSpec, FigureData, FigureKind, Series } from "./figure";
export { renderSvg } from "./svg";

/** Read the CSV, build the figure, write the SVG; returns the series count. */
export function renderFigureFile(spec: FigureSpec): number {
  const rows = parseResultsCsv(readFileSync(spec.input, "utf-8"));
  const fig = buildFigure(rows, spec);
  writeFileSync(spec.output, renderSvg(fig));
  return fig.series.length;
}
