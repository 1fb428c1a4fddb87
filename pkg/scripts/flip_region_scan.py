"""Map where quantization flips the mixed-equilibrium verdict for a 2x2 game.

Prints an ASCII map over (w00, w11) with symmetric off-diagonal weights and
optionally writes the full CSV.
"""
import argparse
import json

from quantum_ess.scanner import Constraint, flip_fraction, scan, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", default="[[3, 4], [2, 5]]", help="2x2 payoff matrix as JSON")
    ap.add_argument("--resolution", type=int, default=51)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv", help="write the scan table here")
    args = ap.parse_args()

    grid = scan(json.loads(args.alpha), args.resolution, Constraint.SYMMETRIC_OFF_DIAGONAL, args.workers)
    m = args.resolution - 1
    cells = {p.indices: p.report for p in grid.points}
    print("rows: w11 from 1 down to 0; cols: w00 from 0 to 1")
    print("  F flip   . no flip   d degenerate   blank outside simplex")
    for j in range(m, -1, -1):
        line = []
        for i in range(m + 1):
            r = cells.get((i, j))
            line.append(" " if r is None else "d" if r.degenerate else "F" if r.flip else ".")
        print("".join(line))
    print(f"flip fraction: {flip_fraction(grid):.4f} of {len(grid)} points")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(grid, fh)


if __name__ == "__main__":
    main()
