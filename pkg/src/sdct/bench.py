"""Timing harness: one discarded warmup, then mean and stddev over repeated runs."""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import asdict, dataclass
from functools import partial
from typing import Callable

import numpy as np

from .dct1d import Algorithm, dct_1d, idct_1d
from .dct2d import dct_2d, dct_2d_rowcol, idct_2d, idct_2d_rowcol, idct_idxst_2d_rowcol, idxst_idct_2d_rowcol
from .errors import UsageError
from .executor import ExecConfig, StageCounters
from .ext import dct_3d, idct_3d, idct_idxst_2d, idxst_idct_2d

DEFAULT_RUNS = 100


@dataclass(frozen=True)
class BenchReport:
    shape: tuple[int, ...]
    kind: str
    runs: int
    mean_ms: float
    stddev_ms: float
    stage_counts: tuple[int, int | None]
    speedup_vs_baseline: float | None
    baseline_mean_ms: float | None = None
    baseline_stddev_ms: float | None = None

    def __post_init__(self):
        if self.runs < 2:
            raise UsageError("a benchmark needs runs >= 2")


Transform = Callable[..., np.ndarray]

# kind -> (rank, fast transform, baseline or None)
KINDS: dict[str, tuple[int, Transform, Transform | None]] = {
    "dct1": (1, dct_1d, partial(dct_1d, algorithm=Algorithm.FOUR_N)),
    "idct1": (1, idct_1d, None),
    "dct2": (2, dct_2d, dct_2d_rowcol),
    "idct2": (2, idct_2d, idct_2d_rowcol),
    "idct-idxst": (2, idct_idxst_2d, idct_idxst_2d_rowcol),
    "idxst-idct": (2, idxst_idct_2d, idxst_idct_2d_rowcol),
    "dct3": (3, dct_3d, None),
    "idct3": (3, idct_3d, None),
}


def parse_shape(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"bad shape {text!r}; expected e.g. 1024x1024") from None
    if not dims or min(dims) < 1:
        raise UsageError(f"bad shape {text!r}")
    return dims


def time_runs(fn: Callable[[], object], runs: int, warmup: int = 1) -> np.ndarray:
    """Wall times in milliseconds of ``runs`` calls after ``warmup`` discarded calls."""
    for _ in range(warmup):
        fn()
    out = np.empty(runs)
    for i in range(runs):
        t0 = time.perf_counter_ns()
        fn()
        out[i] = (time.perf_counter_ns() - t0) / 1e6
    return out


def _stages(fn: Transform, x: np.ndarray, config: ExecConfig) -> int:
    counters = StageCounters()
    fn(x, config=config, counters=counters)
    return counters.full_tensor_stages


def bench(shape: tuple[int, ...], kind: str = "dct2", runs: int = DEFAULT_RUNS, *,
          config: ExecConfig | None = None, algorithm: Algorithm | str | None = None,
          baseline: bool = True, seed: int = 0) -> BenchReport:
    if kind not in KINDS:
        raise UsageError(f"unknown bench kind {kind!r}; choose from {sorted(KINDS)}")
    if runs < 2:
        raise UsageError("--runs must be >= 2")
    rank, fast, base = KINDS[kind]
    if len(shape) != rank:
        raise UsageError(f"kind {kind} needs a rank-{rank} shape, got {shape}")
    if algorithm is not None:
        if kind != "dct1":
            raise UsageError("--algo applies to dct1 only")
        fast = partial(dct_1d, algorithm=Algorithm(algorithm))
    config = config or ExecConfig()
    x = np.random.default_rng(seed).standard_normal(shape)

    times = time_runs(lambda: fast(x, config=config), runs)
    mean, std = statistics.fmean(times), statistics.stdev(times)
    stages = (_stages(fast, x, config), None)
    speedup = base_mean = base_std = None
    if base is not None and baseline:
        btimes = time_runs(lambda: base(x, config=config), runs)
        base_mean, base_std = statistics.fmean(btimes), statistics.stdev(btimes)
        speedup = base_mean / mean
        stages = (stages[0], _stages(base, x, config))
    return BenchReport(tuple(shape), kind, runs, mean, std, stages, speedup, base_mean, base_std)


_COLUMNS = ["shape", "kind", "runs", "mean_ms", "stddev_ms", "baseline_ms", "ratio", "stages"]


def _row(r: BenchReport) -> list[str]:
    def fmt(v, spec=".3f"):
        return "-" if v is None else format(v, spec)

    stages = str(r.stage_counts[0]) if r.stage_counts[1] is None else f"{r.stage_counts[0]} vs {r.stage_counts[1]}"
    return ["x".join(map(str, r.shape)), r.kind, str(r.runs), fmt(r.mean_ms), fmt(r.stddev_ms),
            fmt(r.baseline_mean_ms), fmt(r.speedup_vs_baseline, ".2f"), stages]


def format_table(reports: list[BenchReport], counters: bool = False) -> str:
    cols = _COLUMNS if counters else _COLUMNS[:-1]
    rows = [cols] + [_row(r)[:len(cols)] for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(len(cols))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows)


def write_csv(path, reports: list[BenchReport]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(asdict(reports[0]).keys()) if reports else _COLUMNS)
        for r in reports:
            d = asdict(r)
            d["shape"] = "x".join(map(str, r.shape))
            d["stage_counts"] = "/".join("" if v is None else str(v) for v in r.stage_counts)
            writer.writerow(d.values())
