"""Fused 2D DCT/IDCT vs row-column on square and skewed shapes, with stage counts."""

import argparse

from sdct.bench import bench, format_table, parse_shape, write_csv
from sdct.dct2d import maybe_transpose_strategy

SHAPES = "512x512,1024x1024,2048x2048,100x10000,10000x100"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--shapes", default=SHAPES)
    ap.add_argument("--kinds", default="dct2,idct2")
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()
    reports = []
    for s in args.shapes.split(","):
        shape = parse_shape(s)
        print(f"# {s}: orientation {maybe_transpose_strategy(*shape).value}")
        reports += [bench(shape, k, args.runs) for k in args.kinds.split(",")]
    print(format_table(reports, counters=True))
    if args.csv:
        write_csv(args.csv, reports)


if __name__ == "__main__":
    main()
