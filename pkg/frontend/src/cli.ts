import { writeFileSync } from 'fs';
import { parseArgs } from 'util';

import { FigureKind, FigureRequest, render } from './render.js';

const USAGE =
  'usage: render --kind distribution|wigner|loss-curves --in table.csv ' +
  '[--meta metadata.json] [--envelope envelope.csv] [--no-dots] --out figure.svg';

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: 'string' },
        in: { type: 'string' },
        meta: { type: 'string' },
        envelope: { type: 'string' },
        out: { type: 'string' },
        'no-dots': { type: 'boolean' },
      },
    });
  } catch (err) {
    console.error(String(err));
    console.error(USAGE);
    return 1;
  }
  const { kind, in: input, meta, envelope, out } = parsed.values;
  if (!kind || !input || !out) {
    console.error(USAGE);
    return 1;
  }
  if (!['distribution', 'wigner', 'loss-curves'].includes(kind)) {
    console.error(`unknown kind ${kind}`);
    return 1;
  }
  if (!out.endsWith('.svg')) {
    console.error('only .svg output is supported (deterministic, no raster deps)');
    return 1;
  }
  const request: FigureRequest = {
    kind: kind as FigureKind,
    csvPath: input,
    metaPath: meta,
    envelopePath: envelope,
    spacingDots: !parsed.values['no-dots'],
  };
  try {
    writeFileSync(out, render(request));
  } catch (err) {
    console.error(`render failed: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
  console.log(`wrote ${out}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith('cli.js')) {
  process.exit(main(process.argv.slice(2)));
}
