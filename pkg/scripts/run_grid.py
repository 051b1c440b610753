#!/usr/bin/env python3
"""Verify every block on the standard grid of fields, weights and degrees.

Prints one row per (field, charges, d) with block count, relation instances
checked and the overall verdict.  Exits 1 if anything fails.
"""

import argparse
import sys
import time

from heckeklr import block_decomposition, build_hecke, make_field
from heckeklr.klriso import QCHOICES, check_grading, hecke_from_klr, klr_generators, verify_klr_relations, word_span_rank

FIELDS = ["Q,q=1", "GF(2),q=1", "GF(3),q=1", "Q,q=2", "Q,q=-1", "GF(7),q=2"]
WEIGHTS = [(0,), (0, 1), (0, 0)]


def verify(spec, charges, d, qchoice):
    H = build_hecke(make_field(spec), list(charges), d)
    D = block_decomposition(H)
    instances = 0
    ok = D.ok
    for block in D.values():
        G = klr_generators(block, qchoice)
        report = verify_klr_relations(G)
        instances += sum(report.checked.values())
        rebuilt = hecke_from_klr(G)
        ok &= report.ok and check_grading(G)["ok"]
        ok &= all(M == block.matrices[name] for name, M in rebuilt.items())
        ok &= word_span_rank(G) == block.dimension
    return len(D), instances, ok


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-d1", type=int, default=4, help="largest degree at level one")
    parser.add_argument("--max-d2", type=int, default=3, help="largest degree at level two")
    parser.add_argument("--qchoice", choices=QCHOICES, default="paper")
    args = parser.parse_args()
    print(f"{'field':<11} {'charges':<8} {'d':>2} {'blocks':>6} {'instances':>9} {'time':>6}  verdict")
    all_ok = True
    for spec in FIELDS:
        for charges in WEIGHTS:
            top = args.max_d1 if len(charges) == 1 else args.max_d2
            for d in range(top + 1):
                start = time.perf_counter()
                nblocks, instances, ok = verify(spec, charges, d, args.qchoice)
                all_ok &= ok
                label = ",".join(map(str, charges))
                print(f"{spec:<11} {label:<8} {d:>2} {nblocks:>6} {instances:>9} {time.perf_counter() - start:>5.1f}s  {'ok' if ok else 'FAILED'}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
