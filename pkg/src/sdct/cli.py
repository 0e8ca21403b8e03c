"""``sdct`` command line: transform, bench, compress, force-demo, amdahl, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 format error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import apps, bench, verify
from .dct1d import Algorithm, dct_1d, idct_1d
from .dct2d import dct_2d, idct_2d
from .errors import FormatError, ShapeError, UsageError
from .executor import ExecConfig
from .ext import dct_3d, idct_3d, idct_idxst_2d, idxst_1d, idxst_idct_2d
from .tensor import read_dctb, write_dctb

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3

# kind -> (rank, transform, inverse?)
TRANSFORMS = {
    "dct1": (1, dct_1d, False),
    "idct1": (1, idct_1d, True),
    "dct2": (2, dct_2d, False),
    "idct2": (2, idct_2d, True),
    "dct3": (3, dct_3d, False),
    "idct3": (3, idct_3d, True),
    "idxst1": (1, idxst_1d, True),
    "idct-idxst": (2, idct_idxst_2d, True),
    "idxst-idct": (2, idxst_idct_2d, True),
}


def _config(args) -> ExecConfig:
    threads = args.threads or os.cpu_count() or 1
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    return ExecConfig(parallelism_degree=threads)


def inverse_scale(shape) -> float:
    """Factor that turns an unnormalized inverse into a true inverse: ``2^d / prod(N)``."""
    return 2.0 ** len(shape) / math.prod(shape)


def run_transform(x: np.ndarray, kind: str, algo: str | None = None, normalize: bool = False,
                  config: ExecConfig | None = None) -> np.ndarray:
    if kind not in TRANSFORMS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(TRANSFORMS)}")
    rank, fn, inverse = TRANSFORMS[kind]
    if x.ndim != rank:
        raise UsageError(f"kind {kind} needs a rank-{rank} tensor, got rank {x.ndim}")
    if algo is not None:
        if kind != "dct1":
            raise UsageError("--algo applies to dct1 only")
        out = dct_1d(x, Algorithm(algo), config=config)
    else:
        out = fn(x, config=config)
    if normalize and inverse:
        out = out * inverse_scale(x.shape)
    return out


def cmd_transform(args) -> int:
    x = read_dctb(args.input)
    write_dctb(args.output, run_transform(x, args.kind, args.algo, args.normalize, _config(args)))
    return EXIT_OK


def cmd_bench(args) -> int:
    config = _config(args)
    kinds = args.kind.split(",")
    reports = [bench.bench(bench.parse_shape(s), k, args.runs, config=config, algorithm=args.algo)
               for s in args.shapes.split(",") for k in kinds]
    print(bench.format_table(reports, counters=args.counters))
    if args.csv:
        bench.write_csv(args.csv, reports)
    return EXIT_OK


def cmd_compress(args) -> int:
    if args.epsilon is None and not args.drop_all:
        raise UsageError("compress needs --epsilon or --drop-all")
    img = apps.read_pgm(args.input)
    res = apps.compress(img, args.epsilon or 0.0, drop_all=args.drop_all, config=_config(args))
    apps.write_pgm(args.output, res.image)
    print(f"zero_fraction {res.zero_fraction:.6f}")
    print(f"psnr_db {res.psnr_text()}")
    return EXIT_OK


def cmd_force_demo(args) -> int:
    rho = read_dctb(args.input)
    if rho.ndim != 2:
        raise UsageError(f"density grid must be rank 2, got rank {rho.ndim}")
    fields = apps.force_demo(rho, config=_config(args))
    write_dctb(args.out_xi1, fields.xi1)
    write_dctb(args.out_xi2, fields.xi2)
    return EXIT_OK


def cmd_amdahl(args) -> int:
    print(repr(apps.amdahl_speedup(args.p, args.s)))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_verify()
    print(verify.format_report(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdct", description="DCT/IDCT via real FFT with fused postprocessing")
    sub = parser.add_subparsers(dest="command", required=True)

    def threads(p):
        p.add_argument("--threads", type=int, default=None, help="worker threads (default: core count)")

    p = sub.add_parser("transform", help="transform a DCTB tensor file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--kind", required=True, choices=list(TRANSFORMS))
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default=None)
    p.add_argument("--normalize", action="store_true", help="rescale inverse kinds by 2^d / prod(N)")
    threads(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("bench", help="time fused transforms against their baselines")
    p.add_argument("--shapes", default="1024x1024", help="comma-separated, e.g. 1024x1024,262144")
    p.add_argument("--kind", default="dct2", help=f"comma-separated from {','.join(bench.KINDS)}")
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default=None)
    p.add_argument("--runs", type=int, default=bench.DEFAULT_RUNS)
    p.add_argument("--counters", action="store_true", help="show stage counts (fused vs baseline)")
    p.add_argument("--csv", default=None, help="also write the table as CSV")
    threads(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compress", help="whole-image DCT thresholding of a PGM")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--drop-all", action="store_true", help="zero every coefficient")
    threads(p)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("force-demo", help="spectral field demo on a 2D density grid")
    p.add_argument("input")
    p.add_argument("out_xi1")
    p.add_argument("out_xi2")
    threads(p)
    p.set_defaults(func=cmd_force_demo)

    p = sub.add_parser("amdahl", help="speedup 1/((1-p)+p/s)")
    p.add_argument("p", type=float)
    p.add_argument("s", type=float)
    p.set_defaults(func=cmd_amdahl)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"sdct: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (UsageError, ShapeError, OSError) as exc:
        print(f"sdct: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
