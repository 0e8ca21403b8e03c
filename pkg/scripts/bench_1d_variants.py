"""Mean time of the four 1D DCT schemes over a range of lengths (CPU analogue of the 1D table)."""

import argparse

from sdct.bench import bench
from sdct.dct1d import Algorithm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--exponents", default="10,14,18")
    args = ap.parse_args()
    algos = list(Algorithm)
    print("N".rjust(8) + "".join(a.value.rjust(14) for a in algos) + "   (mean ms)")
    for e in map(int, args.exponents.split(",")):
        n = 1 << e
        means = [bench((n,), "dct1", args.runs, algorithm=a, baseline=False).mean_ms for a in algos]
        print(f"{n:8d}" + "".join(f"{m:14.3f}" for m in means))


if __name__ == "__main__":
    main()
