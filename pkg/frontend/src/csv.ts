/**
 * Reader for the result CSVs written by the simulation harness.
 *
 * The schema is fixed (comma separated, no quoting):
 *   scenario,arch,M_T,M_R,M_C,bits,variant,agc,snr_db,rate_mean,rate_stderr,
 *   p_r_mw,ee,realizations,seed
 * Rows with bits = 0 are the unquantized reference curves; their power and
 * energy-efficiency cells are NaN.
 */

export interface ResultRow {
  scenario: string;
  arch: string;
  m_t: number;
  m_r: number;
  m_c: number;
  bits: number;
  variant: string;
  agc: number;
  snr_db: number;
  rate_mean: number;
  rate_stderr: number;
  p_r_mw: number;
  ee: number;
  realizations: number;
  seed: number;
}

export const REQUIRED_COLUMNS = [
  "scenario", "arch", "M_T", "M_R", "M_C", "bits", "variant", "agc",
  "snr_db", "rate_mean", "rate_stderr", "p_r_mw", "ee", "realizations", "seed",
] as const;

export function parseResultsCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header line");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  const index = new Map(header.map((h, i) => [h, i] as const));
  for (const col of REQUIRED_COLUMNS) {
    if (!index.has(col)) {
      throw new Error(`missing column "${col}" in CSV header (got: ${header.join(", ")})`);
    }
  }
  const num = (cells: string[], col: string, line: number): number => {
    const raw = cells[index.get(col)!];
    const v = Number(raw);
    if (raw === undefined || raw === "" || (Number.isNaN(v) && raw !== "nan")) {
      throw new Error(`bad value "${raw}" for column "${col}" on line ${line + 1}`);
    }
    return v;
  };
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new Error(`line ${i + 2} has ${cells.length} cells, header has ${header.length}`);
    }
    return {
      scenario: cells[index.get("scenario")!],
      arch: cells[index.get("arch")!],
      m_t: num(cells, "M_T", i + 1),
      m_r: num(cells, "M_R", i + 1),
      m_c: num(cells, "M_C", i + 1),
      bits: num(cells, "bits", i + 1),
      variant: cells[index.get("variant")!],
      agc: num(cells, "agc", i + 1),
      snr_db: num(cells, "snr_db", i + 1),
      rate_mean: num(cells, "rate_mean", i + 1),
      rate_stderr: num(cells, "rate_stderr", i + 1),
      p_r_mw: num(cells, "p_r_mw", i + 1),
      ee: num(cells, "ee", i + 1),
      realizations: num(cells, "realizations", i + 1),
      seed: num(cells, "seed", i + 1),
    };
  });
}
