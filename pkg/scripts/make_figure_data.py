#!/usr/bin/env python3
"""Run every recipe under recipes/ through the public CLI and collect the CSVs
(plus their resolved-config sidecars) in data/."""

import sys
from pathlib import Path

from qcarrival.cli import cli_main

ROOT = Path(__file__).resolve().parent.parent
RECIPES = sorted((ROOT / "recipes").glob("*.toml"))


def main():
    out_dir = ROOT / "data"
    out_dir.mkdir(exist_ok=True)
    failures = 0
    for recipe in RECIPES:
        out = out_dir / (recipe.stem + ".csv")
        print(f"== {recipe.name} -> {out}")
        rc = cli_main(["sweep", "--config", str(recipe), "--out", str(out)])
        if rc != 0:
            print(f"   exited with code {rc}", file=sys.stderr)
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
