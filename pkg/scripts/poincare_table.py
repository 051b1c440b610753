#!/usr/bin/env python3
"""Graded dimensions of all blocks of one cyclotomic Hecke algebra."""

import argparse

from heckeklr import block_decomposition, build_hecke, klr_generators, make_field, poincare_polynomial
from heckeklr.klriso import format_laurent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--field", default="Q,q=1")
    parser.add_argument("--charge", default="0,0", help="comma separated multicharge")
    parser.add_argument("--max-d", type=int, default=3)
    args = parser.parse_args()
    F = make_field(args.field)
    charges = [int(c) for c in args.charge.split(",")]
    for d in range(args.max_d + 1):
        for alpha, block in block_decomposition(build_hecke(F, charges, d)).items():
            poly = poincare_polynomial(klr_generators(block))
            print(f"d={d}  {str(alpha):<22} dim={block.dimension:<4} {format_laurent(poly)}")


if __name__ == "__main__":
    main()
