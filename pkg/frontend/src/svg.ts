/** Minimal hand-rolled SVG line charts; no DOM, no plotting dependency. */

import { FigureData, Series } from "./figure";

const W = 860;
const H = 560;
const M = { top: 48, right: 200, bottom: 56, left: 76 };

interface Scale {
  (v: number): number;
}

function linearScale(lo: number, hi: number, rLo: number, rHi: number): Scale {
  const span = hi - lo || 1;
  return (v: number) => rLo + ((v - lo) / span) * (rHi - rLo);
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) {
    throw new Error("no finite values to plot");
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, n = 6): number[] {
  const rawStep = (hi - lo) / n;
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (hi - lo) / s <= n) ?? rawStep;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9 * step; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function polyline(s: Series, xs: Scale, ys: Scale): string {
  const pts = s.x.map((x, i) => `${xs(x).toFixed(2)},${ys(s.y[i]).toFixed(2)}`).join(" ");
  const dash = s.dashed ? ' stroke-dasharray="7,4"' : "";
  if (s.x.length === 1) {
    return `<circle cx="${xs(s.x[0]).toFixed(2)}" cy="${ys(s.y[0]).toFixed(2)}" r="4" fill="${s.color}"/>`;
  }
  return `<polyline points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.8"${dash}/>`;
}

export function renderSvg(fig: FigureData): string {
  const xAll = fig.series.flatMap((s) => s.x);
  const yAll = fig.series.flatMap((s) => s.y);
  const [x0, x1] = extent(xAll);
  const [y0raw, y1] = extent(yAll);
  const y0 = Math.min(0, y0raw);
  const xs = linearScale(x0, x1, M.left, W - M.right);
  const ys = linearScale(y0, y1, H - M.bottom, M.top);

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="sans-serif">`);
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(`<text x="${(M.left + W - M.right) / 2}" y="24" text-anchor="middle" font-size="15">${esc(fig.title)}</text>`);

  for (const t of ticks(x0, x1)) {
    const x = xs(t).toFixed(2);
    parts.push(`<line x1="${x}" y1="${M.top}" x2="${x}" y2="${H - M.bottom}" stroke="#ddd"/>`);
    parts.push(`<text x="${x}" y="${H - M.bottom + 18}" text-anchor="middle" font-size="11">${fmt(t)}</text>`);
  }
  for (const t of ticks(y0, y1)) {
    const y = ys(t).toFixed(2);
    parts.push(`<line x1="${M.left}" y1="${y}" x2="${W - M.right}" y2="${y}" stroke="#ddd"/>`);
    parts.push(`<text x="${M.left - 6}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(t)}</text>`);
  }
  parts.push(`<rect x="${M.left}" y="${M.top}" width="${W - M.left - M.right}" height="${H - M.top - M.bottom}" fill="none" stroke="#333"/>`);
  parts.push(`<text x="${(M.left + W - M.right) / 2}" y="${H - 14}" text-anchor="middle" font-size="13">${esc(fig.xLabel)}</text>`);
  parts.push(`<text x="20" y="${(M.top + H - M.bottom) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(M.top + H - M.bottom) / 2})">${esc(fig.yLabel)}</text>`);

  for (const s of fig.series) {
    parts.push(polyline(s, xs, ys));
  }

  const lx = W - M.right + 14;
  fig.series.forEach((s, i) => {
    const ly = M.top + 10 + i * 18;
    const dash = s.dashed ? ' stroke-dasharray="7,4"' : "";
    parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" stroke="${s.color}" stroke-width="2"${dash}/>`);
    parts.push(`<text x="${lx + 32}" y="${ly + 4}" font-size="11">${esc(s.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
