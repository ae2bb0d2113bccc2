import { mkdtempSync, existsSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { parseResultsCsv } from "../src/csv";
import { buildFigure } from "../src/figure";
import { renderSvg } from "../src/svg";
import { renderFigureFile } from "../src/index";
import { main } from "../src/cli";

const HEADER = "scenario,arch,M_T,M_R,M_C,bits,variant,agc,snr_db,rate_mean," +
  "rate_stderr,p_r_mw,ee,realizations,seed";

/** dl-like fixture: bits 0 (reference) .. 8 for both architectures, 3 SNRs. */
function dlCsv(): string {
  const lines = [HEADER];
  for (const arch of ["dbf", "hbf"]) {
    const mc = arch === "hbf" ? 4 : 1;
    for (const bits of [0, 1, 2, 3, 4, 5, 6, 7, 8]) {
      for (const snr of [-15, 0, 15]) {
        const rate = (bits === 0 ? 9 : bits) * (1 + (snr + 15) / 10) * (arch === "dbf" ? 1.2 : 1);
        const pr = bits === 0 ? "nan" : String(100 + 10 * bits);
        const ee = bits === 0 ? "nan" : String((rate * 1e9) / (100 + 10 * bits));
        lines.push([`dl`, arch, 64, 8, mc, bits, bits === 0 ? "none" : "exact", 0.0,
          snr, rate, 0.01, pr, ee, 100, 42].join(","));
      }
    }
  }
  return lines.join("\n") + "\n";
}

function tmpFile(name: string, content?: string): string {
  const dir = mkdtempSync(join(tmpdir(), "qbfplot-"));
  const p = join(dir, name);
  if (content !== undefined) {
    writeFileSync(p, content);
  }
  return p;
}

describe("csv parsing", () => {
  it("accepts the harness schema", () => {
    const rows = parseResultsCsv(dlCsv());
    expect(rows).toHaveLength(2 * 9 * 3);
    expect(rows[0].scenario).toBe("dl");
    expect(Number.isNaN(rows[0].p_r_mw)).toBe(true);
  });

  it("fails loudly naming a missing column", () => {
    const broken = dlCsv().replace("rate_mean", "rate");
    expect(() => parseResultsCsv(broken)).toThrowError(/missing column "rate_mean"/);
  });

  it("rejects malformed cells", () => {
    const broken = dlCsv().replace(",100,42", ",oops,42");
    expect(() => parseResultsCsv(broken)).toThrowError(/bad value/);
  });
});

describe("figure building", () => {
  const rows = parseResultsCsv(dlCsv());

  it("rate_vs_snr: one series per (bits, arch) incl. references", () => {
    const fig = buildFigure(rows, { input: "", output: "", kind: "rate_vs_snr" });
    expect(fig.series).toHaveLength(18); // 9 per architecture
    expect(fig.xLabel).toBe("SNR [dB]");
    expect(fig.yLabel).toBe("avg. achievable rate [bps/Hz]");
    const dbf1 = fig.series.find((s) => s.arch === "dbf" && s.bits === 1)!;
    expect(dbf1.x).toEqual([-15, 0, 15]);
  });

  it("ee_vs_rate: drops reference rows, keeps per-resolution series", () => {
    const fig = buildFigure(rows, { input: "", output: "", kind: "ee_vs_rate", snr: 0 });
    expect(fig.series).toHaveLength(16); // 8 resolutions per architecture
    expect(fig.xLabel).toBe("avg. achievable rate [bps/Hz]");
    expect(fig.yLabel).toBe("energy efficiency [bps/J]");
    for (const s of fig.series) {
      expect(s.x.every(Number.isFinite)).toBe(true);
      expect(s.y.every(Number.isFinite)).toBe(true);
    }
  });

  it("filters narrow the series set", () => {
    const fig = buildFigure(rows, {
      input: "", output: "", kind: "rate_vs_snr", arch: "hbf", bits: [2, 4],
    });
    expect(fig.series.map((s) => s.label)).toEqual(["HBF 2b", "HBF 4b"]);
    expect(fig.series.every((s) => s.dashed)).toBe(true);
  });

  it("errors on an empty filter result", () => {
    expect(() => buildFigure(rows, {
      input: "", output: "", kind: "rate_vs_snr", arch: "hbf", variant: "diagonal",
    })).toThrowError(/no rows left/);
  });
});

describe("svg rendering", () => {
  const rows = parseResultsCsv(dlCsv());

  it("emits labeled axes and one polyline per series", () => {
    const fig = buildFigure(rows, { input: "", output: "", kind: "rate_vs_snr" });
    const svg = renderSvg(fig);
    expect(svg).toContain("<svg");
    expect(svg).toContain("SNR [dB]");
    expect(svg).toContain("avg. achievable rate [bps/Hz]");
    expect((svg.match(/<polyline/g) ?? []).length).toBe(18);
  });
});

describe("end to end", () => {
  it("renders both figure kinds from the dl fixture", () => {
    const input = tmpFile("dl.csv", dlCsv());
    for (const kind of ["rate_vs_snr", "ee_vs_rate"] as const) {
      const output = tmpFile(`${kind}.svg`);
      const n = renderFigureFile({ input, kind, output });
      expect(n).toBeGreaterThan(0);
      expect(readFileSync(output, "utf-8")).toContain("</svg>");
    }
  });

  it("writes no file when the filter is empty", () => {
    const input = tmpFile("dl.csv", dlCsv());
    const output = tmpFile("nothing.svg");
    expect(() => renderFigureFile({
      input, output, kind: "rate_vs_snr", arch: "hbf", variant: "diagonal",
    })).toThrowError();
    expect(existsSync(output)).toBe(false);
  });

  it("cli happy path and error codes", () => {
    const input = tmpFile("dl.csv", dlCsv());
    const output = tmpFile("fig.svg");
    expect(main(["--in", input, "--kind", "rate_vs_snr", "--out", output])).toBe(0);
    expect(existsSync(output)).toBe(true);
    expect(main(["--in", input, "--kind", "ee_vs_rate", "--snr", "0",
      "--out", tmpFile("ee.svg")])).toBe(0);
    expect(main(["--in", input, "--kind", "rate_vs_snr", "--arch", "nope",
      "--out", tmpFile("x.svg")])).toBe(1);
  });
});
