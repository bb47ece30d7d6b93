/** Command-line entry: render one figure per invocation from a harness CSV. */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FIGURE_KINDS, FigureKind } from "./figures";
import { renderFigure } from "./render";

export async function main(argv: string[]): Promise<number> {
  let exitCode = 0;
  await yargs(argv)
    .scriptName("chanex-figures")
    .command(
      "render",
      "render a figure from a harness CSV",
      (cmd) =>
        cmd
          .option("kind", {
            choices: FIGURE_KINDS,
            demandOption: true,
            describe: "experiment kind the CSV came from",
          })
          .option("in", {
            type: "string",
            demandOption: true,
            describe: "input CSV path (cv_sweep expects the summary file)",
          })
          .option("out", {
            type: "string",
            demandOption: true,
            describe: "output image path (.svg or .png)",
          })
          .option("agg", {
            choices: ["median", "mean"] as const,
            default: "median" as const,
            describe: "per-point aggregate across trials",
          })
          .option("sweep", {
            choices: ["angle", "distance"] as const,
            default: "angle" as const,
            describe: "radiation-profile sweep axis",
          }),
      (args) => {
        const result = renderFigure(args.kind as FigureKind, args.in, args.out, {
          aggregate: args.agg,
          sweep: args.sweep,
        });
        console.log(result.outPath);
      },
    )
    .demandCommand(1)
    .strict()
    .fail((message, error) => {
      console.error(`error: ${error ? error.message : message}`);
      exitCode = 1;
    })
    .exitProcess(false)
    .parseAsync();
  return exitCode;
}

if (require.main === module) {
  main(hideBin(process.argv)).then(
    (code) => process.exit(code),
    (error) => {
      console.error(`error: ${(error as Error).message}`);
      process.exit(1);
    },
  );
}
