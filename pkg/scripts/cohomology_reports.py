"""Exact cohomology reports for every target representation.

Reproduces the dimension table at the collapsed holonomy: H^1 = 1 on
R^{1,3}, 12 on so(1,3), and 13 (split 12 + 1) on each of the three
10-dimensional ambient Lie algebras.
"""

import argparse
import pathlib

from coxvar.cli import main as cli_main

TARGETS = ("r13", "so13", "full-hyp", "full-ads", "full-hp")


def run(outdir):
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for target in TARGETS:
        path = outdir / f"cohomology_{target}.json"
        code = cli_main(["cohomology", "--target", target, "--output", str(path)])
        assert code == 0, target
        print(f"wrote {path}")
        print(path.read_text().rstrip())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    run(args.outdir)
