/** figure-kit command line: render a named recipe from CLI output files. */

import { writeFileSync } from "node:fs";
import { RECIPES } from "./recipes.js";

function usage(): string {
  const names = Object.keys(RECIPES).join(", ");
  return (
    "usage: figure-kit render --recipe <name> --input <file[,file...]> --out <svg>\n" +
    `recipes: ${names}\n`
  );
}

export function main(argv: string[]): number {
  if (argv.length === 0 || argv[0] === "--help") {
    process.stdout.write(usage());
    return 0;
  }
  if (argv[0] !== "render") {
    process.stderr.write(`unknown command '${argv[0]}'\n` + usage());
    return 2;
  }
  const options: Record<string, string> = {};
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      process.stderr.write(usage());
      return 2;
    }
    options[flag.slice(2)] = value;
  }
  const recipeName = options["recipe"];
  const input = options["input"];
  const out = options["out"];
  if (!recipeName || !input || !out) {
    process.stderr.write(usage());
    return 2;
  }
  const recipe = RECIPES[recipeName];
  if (!recipe) {
    process.stderr.write(`unknown recipe '${recipeName}'\n` + usage());
    return 2;
  }
  try {
    const result = recipe.render(input.split(","));
    writeFileSync(out, result.svg, "utf-8");
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

import { pathToFileURL } from "node:url";

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
