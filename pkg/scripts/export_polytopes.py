"""Write the twelve built-in polytopes as JSON files for use with the CLI."""

import argparse
import json
from pathlib import Path

from k3mirror import data
from k3mirror.pipeline import build_polytopes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="polytopes")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for c in data.CASES:
        delta, dual = build_polytopes(c)
        stem = c.singularity.replace(",", "").lower()
        for P, suffix in ((delta, "delta"), (dual, "dual")):
            path = out / f"{stem}_{suffix}.json"
            path.write_text(json.dumps(P.to_json()) + "\n")
            print(path)


if __name__ == "__main__":
    main()
