"""Scan the path parameter and tabulate kernel dimensions.

Writes one CSV per (geometry, system) combination into --outdir,
covering the 102- and 138-equation systems for both pseudo-Riemannian
geometries.  The kernel column should read 11 everywhere for g0, and
11 with a single 23 at t = 0 for g.
"""

import argparse
import pathlib

from coxvar.cli import main as cli_main


def run(outdir, points):
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for geometry in ("hyp", "ads"):
        for system in ("g", "g0"):
            target = outdir / f"trace_{geometry}_{system}.csv"
            code = cli_main(["trace", "--geometry", geometry, "--system", system,
                             f"--grid=-0.9:0.9:{points}", "--output", str(target)])
            assert code == 0, (geometry, system)
            print(f"wrote {target}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--points", type=int, default=19)
    args = ap.parse_args()
    run(args.outdir, args.points)
