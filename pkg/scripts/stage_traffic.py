"""Per-stage element reads/writes and arithmetic for the fused and row-column 2D DCT."""

import argparse

import numpy as np

from sdct.bench import parse_shape
from sdct.dct2d import dct_2d, dct_2d_rowcol
from sdct.executor import StageCounters


def show(label, counters):
    print(f"{label}: {counters.full_tensor_stages} full-tensor stages")
    for s in counters.stages:
        t = s.tally
        extra = "".join(f"  {k}: {n} items x ({m // max(n, 1)} mul, {a // max(n, 1)} add)"
                        for k, (n, m, a) in sorted(t.items.items()))
        print(f"  {s.name:<22} reads {t.reads:>9}  writes {t.writes:>9}{extra}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("shape", nargs="?", default="8x8")
    shape = parse_shape(ap.parse_args().shape)
    x = np.random.default_rng(0).standard_normal(shape)
    fused, rowcol = StageCounters(), StageCounters()
    dct_2d(x, counters=fused)
    dct_2d_rowcol(x, counters=rowcol)
    show("fused", fused)
    show("row-column", rowcol)
    print(f"stage ratio {fused.full_tensor_stages}/{rowcol.full_tensor_stages}")


if __name__ == "__main__":
    main()
