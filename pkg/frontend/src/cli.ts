#!/usr/bin/env node
/**
 * qbf-plot: turn a qbf results CSV into an SVG figure.
 *
 * Usage:
 *   qbf-plot --in results.csv --kind rate_vs_snr --out fig.svg
 *   qbf-plot --in results.csv --kind ee_vs_rate --snr -15 --out ee.svg
 *
 * Optional filters: --arch dbf|hbf, --bits 1,2,4 (0 = unquantized rows),
 * --variant exact|diagonal|none, --snr <dB>.
 * The output is always SVG markup, whatever the file extension.
 */

import { parseArgs } from "node:util";

import { FigureKind, FigureSpec } from "./figure";
import { renderFigureFile } from "./index";

function usage(): never {
  console.error("usage: qbf-plot --in <results.csv> --kind rate_vs_snr|ee_vs_rate " +
    "--out <figure.svg> [--arch dbf|hbf] [--bits 1,2,4] [--variant exact] [--snr -15]");
  process.exit(2);
}

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        kind: { type: "string" },
        out: { type: "string" },
        arch: { type: "string" },
        bits: { type: "string" },
        variant: { type: "string" },
        snr: { type: "string" },
      },
    }));
  } catch (err) {
    console.error((err as Error).message);
    usage();
  }
  if (!values.in || !values.out || !values.kind) {
    usage();
  }
  if (values.kind !== "rate_vs_snr" && values.kind !== "ee_vs_rate") {
    console.error(`unknown figure kind "${values.kind}"`);
    usage();
  }
  const spec: FigureSpec = {
    input: values.in,
    kind: values.kind as FigureKind,
    output: values.out,
    arch: values.arch,
    variant: values.variant,
    bits: values.bits ? values.bits.split(",").map((b) => Number(b)) : undefined,
    snr: values.snr !== undefined ? Number(values.snr) : undefined,
  };
  try {
    const n = renderFigureFile(spec);
    console.log(`wrote ${spec.output} (${n} series)`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
