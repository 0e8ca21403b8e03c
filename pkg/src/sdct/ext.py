"""IDXST, the two IDCT/IDXST composites, 3D DCT/IDCT and a rank-4 factorization.

IDXST is defined from the IDCT by a shifted reversal of the input and an
alternating output sign::

    IDXST(x)_k = (-1)^k IDCT(y)_k,    y_n = x_{N-n},  x_N := 0

Matrix composites act along the last axis first:
``idct_idxst_2d(x) = IDCT(IDXST(x)^T)^T`` applies IDXST to every row and then
IDCT to every column. The fused versions fold the reversal into the 2D IDCT
preprocess reads and the signs into the final reorder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .dct1d import get_plan_1d, idxst_stages
from .dct2d import Orientation, Plan2d, _plan_for, dct_2d, get_plan_2d, idct2d_stages, maybe_transpose_strategy
from .dct2d import idct_idxst_2d_rowcol, idxst_idct_2d_rowcol  # noqa: F401  re-exported
from .errors import PlanError, ShapeError
from .executor import ExecConfig, Stage, StageCounters, parallel_for, run_pipeline
from .fft import HalfSpectrum, half_length, irfftn, rfftn
from .tensor import as_real_tensor, even_odd_dest


def idxst_1d(x, *, config: ExecConfig | None = None,
             counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 1, 1)
    return run_pipeline(idxst_stages(get_plan_1d(x.size)), x.reshape(1, -1), config, counters)[0]


class CompositeKind(str, Enum):
    IDCT_IDXST = "idct-idxst"
    IDXST_IDCT = "idxst-idct"


def composite_stages(plan: Plan2d, kind: CompositeKind | str,
                     orientation: Orientation = Orientation.DIRECT) -> list[Stage]:
    kind = CompositeKind(kind)
    if kind is CompositeKind.IDCT_IDXST:
        return idct2d_stages(plan, orientation, idxst_rows=False, idxst_cols=True)
    return idct2d_stages(plan, orientation, idxst_rows=True, idxst_cols=False)


def _composite(x, kind, plan, orientation, config, counters):
    x = as_real_tensor(x, 2, 2)
    plan = _plan_for(x, plan)
    orientation = orientation or maybe_transpose_strategy(*plan.shape)
    return run_pipeline(composite_stages(plan, kind, orientation), x, config, counters)


def idct_idxst_2d(x, plan: Plan2d | None = None, *, orientation=None,
                  config: ExecConfig | None = None, counters: StageCounters | None = None) -> np.ndarray:
    """IDCT(IDXST(x)^T)^T in three stages."""
    return _composite(x, CompositeKind.IDCT_IDXST, plan, orientation, config, counters)


def idxst_idct_2d(x, plan: Plan2d | None = None, *, orientation=None,
                  config: ExecConfig | None = None, counters: StageCounters | None = None) -> np.ndarray:
    """IDXST(IDCT(x)^T)^T in three stages."""
    return _composite(x, CompositeKind.IDXST_IDCT, plan, orientation, config, counters)


# --- 3D ------------------------------------------------------------------------------


def _twiddles(n: int) -> np.ndarray:
    t = np.exp(-0.5j * np.pi * np.arange(n) / n)
    t.flags.writeable = False
    return t


@dataclass(frozen=True)
class Plan3d:
    dims: tuple[int, int, int]
    twiddles: tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)

    def __post_init__(self):
        if tuple(t.shape[0] for t in self.twiddles) != self.dims:
            raise PlanError("twiddle tables do not match plan dims")


@lru_cache(maxsize=32)
def get_plan_3d(n1: int, n2: int, n3: int) -> Plan3d:
    dims = (n1, n2, n3)
    if min(dims) < 1:
        raise PlanError(f"plan dims must be >= 1, got {dims}")
    return Plan3d(dims, tuple(_twiddles(n) for n in dims))


def _plan3_for(x: np.ndarray, plan: Plan3d | None) -> Plan3d:
    plan = plan or get_plan_3d(*x.shape)
    if plan.dims != x.shape:
        raise ShapeError(f"plan dims {plan.dims} do not match input {x.shape}")
    return plan


def _reorder_3d(dims) -> tuple[np.ndarray, ...]:
    return tuple(even_odd_dest(n) for n in dims)


def _pre_3d(x: np.ndarray, ctx) -> np.ndarray:
    d1, d2, d3 = _reorder_3d(x.shape)
    out = np.empty_like(x)

    def kernel(block, tally):
        rows = slice(block.start, block.stop)
        out[np.ix_(d1[rows], d2, d3)] = x[rows]
        if tally is not None:
            tally.reads += x[rows].size
            tally.writes += x[rows].size

    parallel_for(x.shape, ctx.config, kernel, ctx.tally)
    return out


def _self_paired(k: np.ndarray, n: int) -> np.ndarray:
    return (k == 0) | (2 * k == n)


def _post_3d(spec: np.ndarray, plan: Plan3d, ctx) -> np.ndarray:
    """Merged 3D postprocess.

    With ``P(s1, s2) = w1^s1 w2^s2 V(s1 k1, s2 k2, k3)`` (``w^-`` the conjugate) and
    ``S = sum P``, the output is ``C(k1, k2, k3) = Re(w3 S) / 4`` and
    ``C(k1, k2, N3-k3) = -Im(w3 S) / 4``. Negating ``k1`` or ``k2`` regroups
    the same four products, so one item reads four bins and writes eight outputs.
    """
    n1, n2, n3 = plan.dims
    w1, w2, w3 = plan.twiddles
    m3 = half_length(n3)
    quarter_w3 = 0.25 * w3[:m3]
    lower3 = np.arange(m3)
    upper3 = np.arange(1, (n3 + 1) // 2)
    rows = np.arange(n1 // 2 + 1)
    cols = np.arange(n2 // 2 + 1)
    ncols = (-cols) % n2
    col_pair = ~_self_paired(cols, n2)
    out = np.empty(plan.dims)

    def put(r, c, t):
        if r.size == 0 or c.size == 0:
            return
        out[np.ix_(r, c, lower3)] = t.real
        if upper3.size:
            out[np.ix_(r, c, n3 - upper3)] = -t.imag[..., upper3]

    def kernel(block, tally):
        r = rows[block.start:block.stop]
        nr = (-r) % n1
        a = w1[r, None, None]
        b = w2[None, cols, None]
        pp = a * b * spec[np.ix_(r, cols)]
        mp = np.conj(a) * b * spec[np.ix_(nr, cols)]
        pm = a * np.conj(b) * spec[np.ix_(r, ncols)]
        mm = np.conj(a) * np.conj(b) * spec[np.ix_(nr, ncols)]
        row_pair = ~_self_paired(r, n1)
        put(r, cols, quarter_w3 * (pp + mp + pm + mm))
        put(n1 - r[row_pair], cols, (1j * quarter_w3) * (pp - mp + pm - mm)[row_pair])
        put(r, n2 - cols[col_pair], (1j * quarter_w3) * (pp + mp - pm - mm)[:, col_pair])
        put(n1 - r[row_pair], n2 - cols[col_pair],
            -quarter_w3 * (pp - mp - pm + mm)[np.ix_(row_pair, col_pair)])
        if tally is not None:
            # distinct bins per item: 2 per paired axis, 1 per self-paired axis
            fr = np.where(row_pair, 2, 1)
            fc = np.where(col_pair, 2, 1)
            touched = int(np.outer(fr, fc).sum())
            tally.reads += touched * m3
            tally.writes += touched * n3
            full = int(row_pair.sum()) * int(col_pair.sum())
            tally.work("interior", full * m3, 0, 0)
            tally.work("boundary", (r.size * cols.size - full) * m3, 0, 0)

    parallel_for((rows.size, cols.size, m3), ctx.config, kernel, ctx.tally)
    return out


def _idct_pre_3d(x: np.ndarray, plan: Plan3d, ctx) -> np.ndarray:
    """``V = A1 A2 A3 (I - jR1)(I - jR2)(I - jR3) x / 8``, one-sided along axis 2.

    ``R`` is the shifted reversal ``z(n) -> z(N-n)`` with ``z(N) = 0`` and
    ``A = exp(+j pi n / 2N)``.
    """
    n1, n2, n3 = plan.dims
    m3 = half_length(n3)
    xp = np.zeros((n1 + 1, n2 + 1, n3 + 1))
    xp[:n1, :n2, :n3] = x

    def neg(n, m=None):
        k = np.arange(n if m is None else m)
        return np.where(k == 0, n, n - k)

    # one-sided along the last axis first, then the two leading axes
    z = xp[..., :m3] - 1j * xp[..., neg(n3, m3)]
    z = z[:, :n2] - 1j * z[:, neg(n2)]
    out = np.empty((n1, n2, m3), dtype=np.complex128)
    coef = (np.conj(plan.twiddles[1])[:, None] * np.conj(plan.twiddles[2][:m3])) / 8.0
    a1 = np.conj(plan.twiddles[0])
    n1neg = neg(n1)

    def kernel(block, tally):
        r = slice(block.start, block.stop)
        out[r] = a1[r, None, None] * coef * (z[r] - 1j * z[n1neg[r]])
        if tally is not None:
            tally.writes += out[r].size

    parallel_for((n1, n2, m3), ctx.config, kernel, ctx.tally)
    if ctx.tally is not None:
        ctx.tally.reads += x.size
    return out


def _gather_3d(v: np.ndarray, ctx) -> np.ndarray:
    d1, d2, d3 = _reorder_3d(v.shape)
    out = np.empty_like(v)

    def kernel(block, tally):
        rows = slice(block.start, block.stop)
        out[rows] = v[np.ix_(d1[rows], d2, d3)]
        if tally is not None:
            tally.reads += out[rows].size
            tally.writes += out[rows].size

    parallel_for(v.shape, ctx.config, kernel, ctx.tally)
    return out


def dct3d_stages(plan: Plan3d) -> list[Stage]:
    return [
        Stage("preprocess", lambda x, ctx: _pre_3d(x, ctx)),
        Stage("rfft3d", lambda x, ctx: rfftn(x, ctx.config)),
        Stage("postprocess", lambda hs, ctx: _post_3d(hs.data, plan, ctx)),
    ]


def idct3d_stages(plan: Plan3d) -> list[Stage]:
    return [
        Stage("preprocess", lambda x, ctx: HalfSpectrum(plan.dims, _idct_pre_3d(x, plan, ctx))),
        Stage("irfft3d", lambda hs, ctx: irfftn(hs, ctx.config)),
        Stage("postprocess", lambda v, ctx: _gather_3d(v, ctx)),
    ]


def dct_3d(x, plan: Plan3d | None = None, *, config: ExecConfig | None = None,
           counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 3, 3)
    return run_pipeline(dct3d_stages(_plan3_for(x, plan)), x, config, counters)


def idct_3d(x, plan: Plan3d | None = None, *, config: ExecConfig | None = None,
            counters: StageCounters | None = None) -> np.ndarray:
    """Unnormalized 3D IDCT; ``idct_3d(dct_3d(x)) == N1 N2 N3 / 8 * x``."""
    x = as_real_tensor(x, 3, 3)
    return run_pipeline(idct3d_stages(_plan3_for(x, plan)), x, config, counters)


# --- rank 4 ------------------------------------------------------------------------------


def dct_nd_factorized(x, *, config: ExecConfig | None = None) -> np.ndarray:
    """Rank-4 DCT as two rounds of 2D DCTs: axes (0, 1) per slice, then axes (2, 3)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 4:
        raise ShapeError(f"dct_nd_factorized needs rank 4, got shape {x.shape}")
    x = as_real_tensor(x, 4, 4)
    n0, n1, n2, n3 = x.shape
    first = np.empty_like(x)
    plan01 = get_plan_2d(n0, n1)
    for i in range(n2):
        for j in range(n3):
            first[:, :, i, j] = dct_2d(x[:, :, i, j], plan01, config=config)
    out = np.empty_like(x)
    plan23 = get_plan_2d(n2, n3)
    for i in range(n0):
        for j in range(n1):
            out[i, j] = dct_2d(first[i, j], plan23, config=config)
    return out
