#!/usr/bin/env python3
"""Write the semi-normal matrices of every Specht module of S_d as CSV.

Columns: shape, r, row, column, entry (from the KLR action), oracle entry.
"""

import argparse
import csv
import sys

from heckeklr import make_field
from heckeklr.rootdata import partitions
from heckeklr.seminormal import verify_specht


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--field", default="Q,q=1", help="a field with e = 0")
    parser.add_argument("--d", type=int, default=4)
    parser.add_argument("--qchoice", default="paper")
    parser.add_argument("--out", help="CSV file (default: stdout)")
    args = parser.parse_args()
    F = make_field(args.field)
    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(handle)
    writer.writerow(["shape", "r", "row", "column", "entry", "oracle"])
    failed = []
    for shape in partitions(args.d):
        result = verify_specht(shape, F, args.qchoice)
        if not result["ok"]:
            failed.append(shape)
        label = "-".join(map(str, shape))
        for r, (M, O) in enumerate(zip(result["matrices"], result["oracle"]), start=1):
            for (i, j) in sorted({k for k, _ in M.nonzero_entries()} | {k for k, _ in O.nonzero_entries()}):
                writer.writerow([label, r, i, j, F.format(M[i, j]), F.format(O[i, j])])
    if handle is not sys.stdout:
        handle.close()
    if failed:
        print(f"checks failed for {failed}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
