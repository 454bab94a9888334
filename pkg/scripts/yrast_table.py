"""Print the yrast curve Delta_N(L) next to the known closed form.

Usage: python scripts/yrast_table.py --n 6
"""

import argparse
import math

from coldgas.lll.yrast import hull_breakpoints, laughlin_residual, yrast_closed_form, yrast_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    args = ap.parse_args()

    table = yrast_table(args.n)
    K = (2 * math.pi) ** -1.5
    print(f"N = {args.n}; energies in units of (2 pi)^(-3/2) = {K:.12g}")
    print(f"{'L':>3} {'dim':>6} {'delta_min / K':>16} {'closed form / K':>16} {'degeneracy':>10}")
    for p in table:
        cf = yrast_closed_form(args.n, p.L)
        cf_s = "" if cf is None else f"{cf / K:.12f}"
        print(f"{p.L:>3} {p.dim:>6} {p.delta_min / K:>16.12f} {cf_s:>16} {p.degeneracy:>10}")
    vertices, kappas = hull_breakpoints({p.L: p.delta_min for p in table})
    print("hull vertices:", vertices)
    print("breakpoints kappa / K:", [round(k / K, 12) for k in kappas])
    print(f"Laughlin residual: {laughlin_residual(args.n):.3e}")


if __name__ == "__main__":
    main()
