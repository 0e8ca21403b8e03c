"""1D DCT-II / IDCT (DCT-III) through a real FFT.

Four DCT schemes differ only in how the input is laid out before the FFT
(4N interleaved, mirrored 2N, zero-padded 2N, or the N-point even/odd
reorder) and in the twiddle applied afterwards. All of them return the
unnormalized transform ``X_k = sum_n x_n cos(pi/N (n + 1/2) k)``; the inverse
returns ``x_0/2 + sum_{n>=1} x_n cos(pi/N n (k + 1/2))``, so that
``idct_1d(dct_1d(x)) == N/2 * x``.

The internal stage functions work on a batch of rows (last axis) so the
row-column 2D baseline reuses them unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import PlanError, ShapeError
from .executor import ExecConfig, Stage, StageContext, StageCounters, parallel_for, run_pipeline
from .fft import FftWorkspace, HalfSpectrum, get_workspace, half_length, irfft_rows, rfft_rows
from .tensor import IndexMap, as_real_tensor, even_odd_dest, scatter_permute


class Algorithm(str, Enum):
    FOUR_N = "4n"
    MIRRORED_2N = "mirrored-2n"
    PADDED_2N = "padded-2n"
    N_POINT = "n"

    @property
    def fft_factor(self) -> int:
        return {"4n": 4, "mirrored-2n": 2, "padded-2n": 2, "n": 1}[self.value]


def twiddles(n: int) -> np.ndarray:
    """``exp(-j pi k / 2n)`` for ``k < n``."""
    t = np.exp(-0.5j * np.pi * np.arange(n) / n)
    t.flags.writeable = False
    return t


@dataclass(frozen=True)
class Plan1d:
    n: int
    algorithm: Algorithm
    twiddles: np.ndarray = field(repr=False)
    workspace: FftWorkspace = field(repr=False)
    reorder: IndexMap = field(repr=False)


@lru_cache(maxsize=128)
def get_plan_1d(n: int, algorithm: Algorithm | str = Algorithm.N_POINT) -> Plan1d:
    if n < 1:
        raise PlanError(f"transform length must be >= 1, got {n}")
    algorithm = Algorithm(algorithm)
    reorder = IndexMap((n,), (n,), even_odd_dest(n))
    return Plan1d(n, algorithm, twiddles(n), get_workspace(n * algorithm.fft_factor), reorder)


def _check_plan(plan: Plan1d, n: int) -> None:
    if plan.n != n:
        raise ShapeError(f"plan built for length {plan.n}, input has length {n}")


# --- preprocessing (single sequences) ----------------------------------------------


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    return x


def _pre_4n(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    out = np.zeros((*x.shape[:-1], 4 * n))
    out[..., 1:2 * n:2] = x
    out[..., 2 * n + 1::2] = x[..., ::-1]
    return out


def _pre_mirrored(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x, x[..., ::-1]], axis=-1)


def _pre_padded(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x, np.zeros_like(x)], axis=-1)


def preprocess_4n(x) -> np.ndarray:
    """Odd slots carry ``x`` then ``x`` reversed; even slots are zero (length 4N)."""
    return _pre_4n(as_real_tensor(x, 1, 1))


def preprocess_2n_mirrored(x) -> np.ndarray:
    return _pre_mirrored(as_real_tensor(x, 1, 1))


def preprocess_2n_padded(x) -> np.ndarray:
    return _pre_padded(as_real_tensor(x, 1, 1))


def preprocess_n(x) -> np.ndarray:
    """Even-indexed samples in order, then odd-indexed samples reversed."""
    x = as_real_tensor(x, 1, 1)
    return scatter_permute(x, get_plan_1d(x.size).reorder)


# --- batched stage kernels ------------------------------------------------------------


def _scatter_rows(x: np.ndarray, table: np.ndarray, ctx) -> np.ndarray:
    out = np.empty_like(x)

    def kernel(block, tally):
        out[block.start:block.stop, table] = x[block.start:block.stop]
        if tally is not None:
            n = (block.stop - block.start) * x.shape[1]
            tally.reads += n
            tally.writes += n

    parallel_for(x.shape, ctx.config, kernel, ctx.tally)
    return out


def _gather_rows(v: np.ndarray, table: np.ndarray, ctx, signs: np.ndarray | None = None) -> np.ndarray:
    out = np.empty_like(v)

    def kernel(block, tally):
        rows = v[block.start:block.stop, table]
        out[block.start:block.stop] = rows if signs is None else rows * signs
        if tally is not None:
            n = (block.stop - block.start) * v.shape[1]
            tally.reads += n
            tally.writes += n

    parallel_for(v.shape, ctx.config, kernel, ctx.tally)
    return out


def _post_n_rows(spec: np.ndarray, plan: Plan1d, ctx) -> np.ndarray:
    """Merged N-point postprocess: bin k yields outputs k and N-k.

    With ``z = w_k X(k)``: ``y(k) = Re z`` and ``y(N-k) = -Im z``, which is the
    one-sided form of ``Re(w_n conj(X(N-n)))`` for the upper half.
    """
    n = plan.n
    m = half_length(n)
    mirror = np.arange(1, (n + 1) // 2)  # bins whose partner N-k is distinct
    w = plan.twiddles[:m]
    out = np.empty((spec.shape[0], n))

    def kernel(block, tally):
        z = spec[block.start:block.stop] * w
        out[block.start:block.stop, :m] = z.real
        out[block.start:block.stop, n - mirror] = -z.imag[:, mirror]
        if tally is not None:
            rows = block.stop - block.start
            tally.reads += rows * m
            tally.writes += rows * n

    parallel_for(spec.shape, ctx.config, kernel, ctx.tally)
    return out


def _post_simple_rows(spec: np.ndarray, plan: Plan1d, ctx) -> np.ndarray:
    n = plan.n
    alg = plan.algorithm
    out = np.empty((spec.shape[0], n))

    def kernel(block, tally):
        head = spec[block.start:block.stop, :n]
        if alg is Algorithm.FOUR_N:
            out[block.start:block.stop] = 0.5 * head.real
        elif alg is Algorithm.MIRRORED_2N:
            out[block.start:block.stop] = 0.5 * (head * plan.twiddles).real
        else:
            out[block.start:block.stop] = (head * plan.twiddles).real
        if tally is not None:
            tally.reads += head.size
            tally.writes += head.size

    parallel_for(spec.shape, ctx.config, kernel, ctx.tally)
    return out


def dct_stages(plan: Plan1d) -> list[Stage]:
    """Preprocess, real FFT and postprocess stages over a batch of rows."""
    alg = plan.algorithm
    table = plan.reorder.table

    if alg is Algorithm.N_POINT:
        def pre(x, ctx):
            return _scatter_rows(x, table, ctx)
    else:
        layout = {Algorithm.FOUR_N: _pre_4n, Algorithm.MIRRORED_2N: _pre_mirrored,
                  Algorithm.PADDED_2N: _pre_padded}[alg]

        def pre(x, ctx):
            if ctx.tally is not None:
                ctx.tally.reads += x.size
                ctx.tally.writes += x.size * alg.fft_factor
            return layout(x)

    def transform(x, ctx):
        return rfft_rows(x, ctx.config)

    def post(spec, ctx):
        if alg is Algorithm.N_POINT:
            return _post_n_rows(spec, plan, ctx)
        return _post_simple_rows(spec, plan, ctx)

    return [Stage("preprocess", pre), Stage("rfft", transform), Stage("postprocess", post)]


def _idct_pre_rows(x: np.ndarray, plan: Plan1d, ctx, reflected: bool = False) -> np.ndarray:
    """``V(k) = conj(w_k)/2 * (y(k) - j y(N-k))`` for the one-sided bins, ``y(N) = 0``.

    ``y = x`` normally; with ``reflected`` it is the shifted reversal
    ``y(k) = x(N-k)``, ``y(0) = 0``, read straight out of ``x``.
    """
    n = plan.n
    m = half_length(n)
    coef = 0.5 * np.conj(plan.twiddles[:m])
    ks = np.arange(1, m)
    out = np.empty((x.shape[0], m), dtype=np.complex128)

    def kernel(block, tally):
        rows = x[block.start:block.stop]
        first = np.zeros((rows.shape[0], m))
        partner = np.zeros((rows.shape[0], m))
        if reflected:
            first[:, 1:] = rows[:, n - ks]
            partner[:, 1:] = rows[:, ks]
        else:
            first[:, 0] = rows[:, 0]
            first[:, 1:] = rows[:, ks]
            partner[:, 1:] = rows[:, n - ks]
        out[block.start:block.stop] = coef * (first - 1j * partner)
        if tally is not None:
            tally.reads += rows.shape[0] * (n - 1 if reflected else n)
            tally.writes += rows.shape[0] * m

    parallel_for(x.shape, ctx.config, kernel, ctx.tally)
    return out


def idct_stages(plan: Plan1d, signs: np.ndarray | None = None) -> list[Stage]:
    """IDCT over a batch of rows; ``signs`` optionally multiplies the outputs."""
    n = plan.n
    table = plan.reorder.table

    def pre(x, ctx):
        return _idct_pre_rows(x, plan, ctx)

    def transform(spec, ctx):
        return irfft_rows(spec, n, ctx.config)

    def post(v, ctx):
        return _gather_rows(v, table, ctx, signs)

    return [Stage("preprocess", pre), Stage("irfft", transform), Stage("postprocess", post)]


# --- public 1D transforms ---------------------------------------------------------------


def postprocess_n(hs: HalfSpectrum, plan: Plan1d) -> np.ndarray:
    """N-point postprocess on a one-sided spectrum of logical length ``plan.n``."""
    if hs.logical_dims != (plan.n,):
        raise ShapeError(f"spectrum logical dims {hs.logical_dims} != ({plan.n},)")
    return _post_n_rows(hs.data.reshape(1, -1), plan, StageContext(ExecConfig(), None))[0]


def dct_1d(x, algorithm: Algorithm | str = Algorithm.N_POINT, plan: Plan1d | None = None, *,
           config: ExecConfig | None = None, counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 1, 1)
    plan = plan or get_plan_1d(x.size, algorithm)
    _check_plan(plan, x.size)
    return run_pipeline(dct_stages(plan), _rows(x), config, counters)[0]


def idct_1d(x, plan: Plan1d | None = None, *, config: ExecConfig | None = None,
            counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 1, 1)
    plan = plan or get_plan_1d(x.size)
    _check_plan(plan, x.size)
    return run_pipeline(idct_stages(plan), _rows(x), config, counters)[0]


def odd_signs(n: int) -> np.ndarray:
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def idxst_stages(plan: Plan1d) -> list[Stage]:
    """IDXST over rows: shifted reversal folded into the preprocess reads, ``(-1)^k`` into the reorder."""
    base = idct_stages(plan, signs=odd_signs(plan.n))

    def pre(x, ctx):
        return _idct_pre_rows(x, plan, ctx, reflected=True)

    return [Stage("preprocess", pre), *base[1:]]
