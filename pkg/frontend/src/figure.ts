/**
 * Series extraction: one curve per (bits, arch, variant) combination present
 * after filtering.  Two figure kinds:
 *
 *   rate_vs_snr — x: SNR [dB], y: avg. achievable rate [bps/Hz]
 *   ee_vs_rate  — x: avg. achievable rate [bps/Hz], y: energy efficiency
 *                 [bps/J]; points ordered by SNR, reference rows (bits = 0)
 *                 dropped because they carry no power figure.
 */

import { ResultRow } from "./csv";

export type FigureKind = "rate_vs_snr" | "ee_vs_rate";

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  arch?: string;       // "dbf" | "hbf"
  bits?: number[];     // subset of resolutions; 0 selects the reference rows
  variant?: string;    // "exact" | "diagonal" | "none"
  snr?: number;        // restrict to one SNR grid point
}

export interface Series {
  label: string;
  arch: string;
  bits: number;
  variant: string;
  x: number[];
  y: number[];
  color: string;
  dashed: boolean;
}

export interface FigureData {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

// deterministic palette: hue from the resolution, dashed lines for hybrid
const HUES = [0, 220, 30, 120, 275, 170, 55, 320, 200];

export function seriesColor(bits: number, arch: string): string {
  if (bits === 0) {
    return arch === "hbf" ? "#2d6a4f" : "#d00000";
  }
  const hue = HUES[bits % HUES.length];
  const light = arch === "hbf" ? 55 : 35;
  return `hsl(${hue}, 70%, ${light}%)`;
}

function applyFilters(rows: ResultRow[], spec: FigureSpec): ResultRow[] {
  return rows.filter((r) =>
    (spec.arch === undefined || r.arch === spec.arch) &&
    (spec.bits === undefined || spec.bits.includes(r.bits)) &&
    (spec.variant === undefined || r.variant === spec.variant) &&
    (spec.snr === undefined || r.snr_db === spec.snr));
}

function groupKey(r: ResultRow): string {
  return `${r.arch}|${r.bits}|${r.variant}`;
}

function seriesLabel(r: ResultRow): string {
  const base = r.bits === 0 ? `${r.arch.toUpperCase()} NQ` : `${r.arch.toUpperCase()} ${r.bits}b`;
  return r.variant === "diagonal" ? `${base} diag` : base;
}

export function buildFigure(rows: ResultRow[], spec: FigureSpec): FigureData {
  let selected = applyFilters(rows, spec);
  if (spec.kind === "ee_vs_rate") {
    selected = selected.filter((r) => r.bits !== 0 && Number.isFinite(r.ee));
  }
  if (selected.length === 0) {
    throw new Error("no rows left after filtering; nothing to plot");
  }
  const groups = new Map<string, ResultRow[]>();
  for (const r of selected) {
    const key = groupKey(r);
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(r);
    } else {
      groups.set(key, [r]);
    }
  }
  const ordered = [...groups.values()].sort((a, b) =>
    a[0].arch.localeCompare(b[0].arch) || a[0].bits - b[0].bits ||
    a[0].variant.localeCompare(b[0].variant));
  const series = ordered.map((bucket) => {
    bucket.sort((a, b) => a.snr_db - b.snr_db);
    const first = bucket[0];
    return {
      label: seriesLabel(first),
      arch: first.arch,
      bits: first.bits,
      variant: first.variant,
      x: bucket.map((r) => (spec.kind === "rate_vs_snr" ? r.snr_db : r.rate_mean)),
      y: bucket.map((r) => (spec.kind === "rate_vs_snr" ? r.rate_mean : r.ee)),
      color: seriesColor(first.bits, first.arch),
      dashed: first.arch === "hbf",
    };
  });
  const scenario = selected[0].scenario;
  return spec.kind === "rate_vs_snr"
    ? {
        title: `${scenario}: achievable rate vs SNR`,
        xLabel: "SNR [dB]",
        yLabel: "avg. achievable rate [bps/Hz]",
        series,
      }
    : {
        title: `${scenario}: energy efficiency vs rate${spec.snr !== undefined ? ` (SNR ${spec.snr} dB)` : ""}`,
        xLabel: "avg. achievable rate [bps/Hz]",
        yLabel: "energy efficiency [bps/J]",
        series,
      };
}
