#!/usr/bin/env python3
"""Print a gallery of symbolic decompositions, optionally evaluated.

Walks a set of showcase mapping spaces (free loop spaces, torus and
bouquet towers, products, attachment-shift atoms, symbolic residuals) and
prints their formal sums over a degree window.  With --profiles the sums
are also evaluated against the given tables.

    python3 scripts/decomposition_gallery.py --profiles profiles/synthetic_demo.json
"""

import argparse
import sys

from gottlieb.decompose import decompose
from gottlieb.profiles import Incomplete, evaluate, load
from gottlieb.spaces import parse_space

GALLERY = (
    ("free loop space", "loop(Y)"),
    ("double free loop space", "loop(Y, 2)"),
    ("torus mapping space", "map(T3, Y)"),
    ("bouquet tower", "bloop(Y, 2, 3)"),
    ("sphere-wedge product", "map(prod(S2, wedge(S1, S3)), Y)"),
    ("attachment-shift atom", "map(X, Y)"),
    ("symbolic residual", "map(susp(B), Y)"),
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--profiles", help="profile document to evaluate against")
    parser.add_argument("--max-degree", type=int, default=3)
    args = parser.parse_args(argv)

    db = None
    if args.profiles:
        with open(args.profiles, encoding="utf-8") as handle:
            db = load(handle.read())
    shifts = db.atom_shifts() if db is not None else {"X": (5, 10)}

    for title, text in GALLERY:
        expr = parse_space(text)
        print(f"{title}: {text}")
        for degree in range(1, args.max_degree + 1):
            formal_sum = decompose(expr, degree, shifts)
            line = f"  n={degree}:  {formal_sum}"
            if db is not None:
                value = evaluate(formal_sum, db)
                if isinstance(value, Incomplete):
                    detail = ", ".join(value.missing + value.residuals)
                    line += f"  =  incomplete ({detail})"
                else:
                    line += f"  =  {value}"
            print(line)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
