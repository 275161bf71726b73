#!/usr/bin/env node
/**
 * Render a figure described by a plot-spec JSON file:
 *
 *   diracwalk-plots --spec figure.json
 *
 * The spec names the figure kind, the input scan CSVs (from the diracwalk
 * CLI), and the output SVG path.  compare-1d reports its measured band
 * agreement on stdout before writing the image; a missing column or file
 * exits nonzero with a message naming it.
 */

import { writeFileSync } from 'fs';
import { readFileSync } from 'fs';
import { PlotSpec, render } from './figures';

export function main(argv: string[]): number {
  const i = argv.indexOf('--spec');
  if (i < 0 || !argv[i + 1]) {
    console.error('usage: diracwalk-plots --spec <figure.json>');
    return 2;
  }
  let spec: PlotSpec;
  try {
    spec = JSON.parse(readFileSync(argv[i + 1], 'utf8')) as PlotSpec;
  } catch (err) {
    console.error(`cannot read spec: ${(err as Error).message}`);
    return 2;
  }
  try {
    const result = render(spec);
    writeFileSync(spec.output, result.svg);
    if (result.agreementGap !== undefined) {
      console.log(
        `agreement gap in |x| <= ${result.agreementWindow}: ${result.agreementGap.toExponential(6)}`,
      );
    }
    console.log(`wrote ${spec.output}`);
    return 0;
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
