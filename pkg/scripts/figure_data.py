"""Emit CSV data for the Tc-shift bound curve and the N = 4 yrast hull.

Usage: python scripts/figure_data.py --outdir figures/
"""

import argparse
import pathlib

from coldgas import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="figures")
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--c", type=float, default=1.0)
    args = ap.parse_args()

    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "tc_bound.csv": ["figure", "tc_bound", "--c", str(args.c)],
        f"yrast_hull_N{args.n}.csv": ["figure", "yrast_hull", "--n", str(args.n)],
    }
    for name, argv in jobs.items():
        code = cli.main(argv + ["--out", str(out / name)])
        if code:
            raise SystemExit(code)
        print(out / name)


if __name__ == "__main__":
    main()
