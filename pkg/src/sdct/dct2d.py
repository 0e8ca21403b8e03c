"""Fused 2D DCT / IDCT: one reorder, one 2D real FFT, one merged postprocess.

The forward postprocess exploits two redundancies. Outputs ``(n1, n2)`` and
``(N1-n1, n2)`` need the same pair of spectrum bins, and the one-sided
spectrum supplies ``X(n1, N2-n2)`` as ``conj(X(N1-n1, n2))``. One work item
therefore reads ``X(n1, n2)`` and ``X(N1-n1, n2)`` and writes four outputs:

    s = b (a X1 + conj(a) X2),   t = b (a X1 - conj(a) X2)
    y(n1, n2) = Re s             y(N1-n1, n2) = -Im t
    y(n1, N2-n2) = -Im s         y(N1-n1, N2-n2) = -Re t

with ``a = exp(-j pi n1 / 2N1)`` and ``b = exp(-j pi n2 / 2N2) / 2``. Row
indices wrap (``X(N1 - 0, .) = X(0, .)``), which keeps the boundary rows on
the same formula. Outputs follow the unnormalized definition
``sum x cos(pi/N1 (n1+1/2) k1) cos(pi/N2 (n2+1/2) k2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .dct1d import dct_stages, get_plan_1d, idct_stages, idxst_stages
from .errors import PlanError, ShapeError
from .executor import ExecConfig, Stage, StageContext, StageCounters, parallel_for, run_pipeline
from .fft import HalfSpectrum, half_length, irfftn, rfftn
from .tensor import IndexMap, as_real_tensor, even_odd_dest, gather_permute, scatter_permute


def _unit_twiddles(n: int) -> np.ndarray:
    t = np.exp(-0.5j * np.pi * np.arange(n) / n)
    t.flags.writeable = False
    return t


@dataclass(frozen=True)
class Plan2d:
    n1: int
    n2: int
    twiddle_a: np.ndarray = field(repr=False)
    twiddle_b: np.ndarray = field(repr=False)
    reorder: IndexMap = field(repr=False)
    # output scale folded into the column twiddles
    half_b: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.twiddle_a.shape != (self.n1,) or self.twiddle_b.shape != (self.n2,):
            raise PlanError("twiddle tables do not match plan dims")
        half_b = 0.5 * self.twiddle_b
        half_b.flags.writeable = False
        object.__setattr__(self, "half_b", half_b)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)


@lru_cache(maxsize=64)
def get_plan_2d(n1: int, n2: int) -> Plan2d:
    if n1 < 1 or n2 < 1:
        raise PlanError(f"plan dims must be >= 1, got {(n1, n2)}")
    d1, d2 = even_odd_dest(n1), even_odd_dest(n2)
    table = (d1[:, None] * n2 + d2[None, :]).reshape(-1)
    return Plan2d(n1, n2, _unit_twiddles(n1), _unit_twiddles(n2), IndexMap((n1, n2), (n1, n2), table))


def _plan_for(x: np.ndarray, plan: Plan2d | None) -> Plan2d:
    plan = plan or get_plan_2d(*x.shape)
    if plan.shape != x.shape:
        raise ShapeError(f"plan dims {plan.shape} do not match input {x.shape}")
    return plan


class Orientation(str, Enum):
    DIRECT = "direct"
    TRANSPOSED = "transposed"


def maybe_transpose_strategy(n1: int, n2: int, ratio: float = 4.0) -> Orientation:
    """Run tall inputs as their wide transpose (FFT rows are the long axis)."""
    if n2 < n1 and n1 / n2 >= ratio:
        return Orientation.TRANSPOSED
    return Orientation.DIRECT


# --- reorders -----------------------------------------------------------------------


def _scatter_2d(x: np.ndarray, table2d: np.ndarray, out_shape, ctx) -> np.ndarray:
    out = np.empty(out_shape)
    flat = out.reshape(-1)

    def kernel(block, tally):
        flat[table2d[block.start:block.stop]] = x[block.start:block.stop]
        if tally is not None:
            n = (block.stop - block.start) * x.shape[1]
            tally.reads += n
            tally.writes += n

    parallel_for(x.shape, ctx.config, kernel, ctx.tally)
    return out


def dct2d_preprocess(x, plan: Plan2d | None = None) -> np.ndarray:
    """Even/odd quadrant reorder, the 1D N-point reorder along both axes at once."""
    x = as_real_tensor(x, 2, 2)
    return scatter_permute(x, _plan_for(x, plan).reorder)


def idct2d_postprocess(v, plan: Plan2d | None = None) -> np.ndarray:
    """Inverse of :func:`dct2d_preprocess`."""
    v = as_real_tensor(v, 2, 2)
    return gather_permute(v, _plan_for(v, plan).reorder)


def _gather_post(v: np.ndarray, plan: Plan2d, out: np.ndarray, ctx,
                 row_signs=None, col_signs=None) -> np.ndarray:
    d1, d2 = even_odd_dest(plan.n1), even_odd_dest(plan.n2)

    def kernel(block, tally):
        rows = v[d1[block.start:block.stop]][:, d2]
        if row_signs is not None:
            rows = rows * row_signs[block.start:block.stop, None]
        if col_signs is not None:
            rows = rows * col_signs
        out[block.start:block.stop] = rows
        if tally is not None:
            tally.reads += rows.size
            tally.writes += rows.size

    parallel_for(out.shape, ctx.config, kernel, ctx.tally)
    return out


# --- fused postprocess -----------------------------------------------------------------


def _split(n: int):
    """Interior indices ``1..ceil(n/2)-1`` and the self-mirrored ones (0 and n/2)."""
    inner = np.arange(1, (n + 1) // 2)
    edge = np.array([0, n // 2] if n % 2 == 0 and n > 1 else [0])
    return inner, edge


def _fused_post(spec: np.ndarray, plan: Plan2d, out: np.ndarray, ctx) -> np.ndarray:
    n1, n2 = plan.n1, plan.n2
    ri, rb = _split(n1)
    ci, cb = _split(n2)
    a = plan.twiddle_a
    b = plan.half_b

    def pair(rows, cols, tally, kind, nout):
        """Work items over ``rows x cols`` with distinct row partners."""

        def kernel(block, t):
            r = rows[block.start:block.stop]
            q = n1 - r
            x1 = spec[np.ix_(r, cols)]
            x2 = spec[np.ix_(q, cols)]
            ar, ai = a.real[r, None], a.imag[r, None]
            br, bi = b.real[cols], b.imag[cols]
            x1r, x1i, x2r, x2i = x1.real, x1.imag, x2.real, x2.imag
            # a*X1 and conj(a)*X2
            pr = ar * x1r - ai * x1i
            pi = ar * x1i + ai * x1r
            qr = ar * x2r + ai * x2i
            qi_ = ar * x2i - ai * x2r
            ur, ui = pr + qr, pi + qi_
            vr, vi = pr - qr, pi - qi_
            sr = br * ur - bi * ui
            si = br * ui + bi * ur
            tr = br * vr - bi * vi
            ti = br * vi + bi * vr
            out[np.ix_(r, cols)] = sr
            out[np.ix_(q, cols)] = -ti
            if nout == 4:
                out[np.ix_(r, n2 - cols)] = -si
                out[np.ix_(q, n2 - cols)] = -tr
            if t is not None:
                items = r.size * cols.size
                t.reads += 2 * items
                t.writes += nout * items
                t.work(kind, items, 16, 12)

        parallel_for((rows.size, cols.size), ctx.config, kernel, tally)

    def single(rows, cols, tally, kind, nout):
        """Work items on self-mirrored rows (0, N1/2): ``a X + conj(a) X = 2 Re(a) X``."""

        def kernel(block, t):
            r = rows[block.start:block.stop]
            x1 = spec[np.ix_(r, cols)]
            c = 2.0 * a.real[r, None]
            ur, ui = c * x1.real, c * x1.imag
            br, bi = b.real[cols], b.imag[cols]
            sr = br * ur - bi * ui
            out[np.ix_(r, cols)] = sr
            if nout == 2:
                si = br * ui + bi * ur
                out[np.ix_(r, n2 - cols)] = -si
            if t is not None:
                items = r.size * cols.size
                t.reads += items
                t.writes += nout * items
                t.work(kind, items, 6 if nout == 2 else 4, 2 if nout == 2 else 1)

        parallel_for((rows.size, cols.size), ctx.config, kernel, tally)

    tally = ctx.tally
    if ri.size and ci.size:
        pair(ri, ci, tally, "interior", 4)
    if ri.size:
        pair(ri, cb, tally, "edge-col", 2)
    if ci.size:
        single(rb, ci, tally, "edge-row", 2)
    single(rb, cb, tally, "corner", 1)
    return out


def dct2d_postprocess_fused(hs: HalfSpectrum, plan: Plan2d, *, config: ExecConfig | None = None,
                            tally=None) -> np.ndarray:
    if hs.logical_dims != plan.shape:
        raise ShapeError(f"spectrum dims {hs.logical_dims} do not match plan {plan.shape}")
    out = np.empty(plan.shape)
    return _fused_post(hs.data, plan, out, StageContext(config or ExecConfig(), tally))


# --- merged IDCT preprocess --------------------------------------------------------------


def _read_indices(n: int, reflected: bool):
    """Positions of ``y(k)`` and ``y(N-k)`` inside a zero-padded copy of ``x`` (pad slot = n).

    ``y = x`` normally, or the shifted reversal ``y(k) = x(N-k)``, ``y(0) = 0``.
    """
    k = np.arange(n)
    pos = k.copy()
    neg = np.where(k == 0, n, n - k)
    if reflected:
        pos, neg = np.where(k == 0, n, n - k), np.where(k == 0, n, k)
    return pos, neg


def _idct_pre(x: np.ndarray, plan: Plan2d, ctx, reflect_rows=False, reflect_cols=False) -> np.ndarray:
    """One-sided ``V(n1, n2) = A(n1) B(n2) [y(n1,n2) - y(-n1,-n2) - j (y(-n1,n2) + y(n1,-n2))] / 4``.

    ``A, B = exp(+j pi n / 2N)``; ``y(-n) = y(N-n)`` with ``y(N) = 0``. A work item
    ``(p, c)`` reads the four reals and writes ``V(p, c)`` and ``V(N1-p, c)``.
    """
    n1, n2 = plan.n1, plan.n2
    m2 = half_length(n2)
    xp = np.zeros((n1 + 1, n2 + 1))
    xp[:n1, :n2] = x
    rpos, rneg = _read_indices(n1, reflect_rows)
    cpos, cneg = _read_indices(n2, reflect_cols)
    cpos, cneg = cpos[:m2], cneg[:m2]
    ca = 0.5 * np.conj(plan.twiddle_a)
    cb = 0.5 * np.conj(plan.twiddle_b[:m2])
    rows = np.arange(n1 // 2 + 1)
    out = np.empty((n1, m2), dtype=np.complex128)

    def kernel(block, tally):
        p = rows[block.start:block.stop]
        alpha = xp[np.ix_(rpos[p], cpos)]
        beta = xp[np.ix_(rneg[p], cneg)]
        gamma = xp[np.ix_(rneg[p], cpos)]
        delta = xp[np.ix_(rpos[p], cneg)]
        out[p] = (ca[p, None] * cb) * ((alpha - beta) - 1j * (gamma + delta))
        upper = p[(p > 0) & (2 * p != n1)]
        if upper.size:
            sel = np.searchsorted(p, upper)
            g = (gamma[sel] - delta[sel]) - 1j * (alpha[sel] + beta[sel])
            out[n1 - upper] = (ca[n1 - upper, None] * cb) * g
        if tally is not None:
            tally.writes += (p.size + upper.size) * m2
            tally.work("idct-pre", p.size * m2, 0, 0)

    parallel_for((rows.size, m2), ctx.config, kernel, ctx.tally)
    if ctx.tally is not None:
        read_rows = np.union1d(rpos, rneg)
        read_cols = np.union1d(cpos, cneg)
        ctx.tally.reads += np.count_nonzero(read_rows < n1) * np.count_nonzero(read_cols < n2)
    return out


def idct2d_preprocess(x, plan: Plan2d | None = None) -> HalfSpectrum:
    x = as_real_tensor(x, 2, 2)
    plan = _plan_for(x, plan)
    return HalfSpectrum(plan.shape, _idct_pre(x, plan, StageContext(ExecConfig(), None)))


# --- pipelines -------------------------------------------------------------------------------


def _oriented(plan: Plan2d, orientation: Orientation) -> tuple[Plan2d, bool]:
    if Orientation(orientation) is Orientation.TRANSPOSED:
        return get_plan_2d(plan.n2, plan.n1), True
    return plan, False


def dct2d_stages(plan: Plan2d, orientation: Orientation = Orientation.DIRECT) -> list[Stage]:
    work, transposed = _oriented(plan, orientation)
    # preprocess scatters straight into the (possibly transposed) FFT layout
    d1, d2 = even_odd_dest(plan.n1), even_odd_dest(plan.n2)
    if transposed:
        table = d2[None, :] * plan.n1 + d1[:, None]
    else:
        table = d1[:, None] * plan.n2 + d2[None, :]

    def pre(x, ctx):
        return _scatter_2d(x, table, work.shape, ctx)

    def transform(v, ctx):
        return rfftn(v, ctx.config)

    def post(hs, ctx):
        out = np.empty(plan.shape)
        _fused_post(hs.data, work, out.T if transposed else out, ctx)
        return out

    return [Stage("preprocess", pre), Stage("rfft2d", transform), Stage("postprocess", post)]


def idct2d_stages(plan: Plan2d, orientation: Orientation = Orientation.DIRECT,
                  idxst_rows: bool = False, idxst_cols: bool = False) -> list[Stage]:
    """Merged preprocess, 2D inverse real FFT, signed reorder.

    ``idxst_rows`` / ``idxst_cols`` swap the IDCT along axis 0 / axis 1 for an
    IDXST: the shifted reversal moves into the preprocess reads and the
    ``(-1)^k`` factor into the final reorder.
    """
    work, transposed = _oriented(plan, orientation)
    if transposed:
        idxst_rows, idxst_cols = idxst_cols, idxst_rows
    row_signs = np.where(np.arange(work.n1) % 2, -1.0, 1.0) if idxst_rows else None
    col_signs = np.where(np.arange(work.n2) % 2, -1.0, 1.0) if idxst_cols else None

    def pre(x, ctx):
        return HalfSpectrum(work.shape, _idct_pre(x.T if transposed else x, work, ctx,
                                                  idxst_rows, idxst_cols))

    def transform(hs, ctx):
        return irfftn(hs, ctx.config)

    def post(v, ctx):
        out = np.empty(plan.shape)
        _gather_post(v, work, out.T if transposed else out, ctx, row_signs, col_signs)
        return out

    return [Stage("preprocess", pre), Stage("irfft2d", transform), Stage("postprocess", post)]


def dct_2d(x, plan: Plan2d | None = None, *, orientation: Orientation | str | None = None,
           config: ExecConfig | None = None, counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 2, 2)
    plan = _plan_for(x, plan)
    orientation = orientation or maybe_transpose_strategy(*plan.shape)
    return run_pipeline(dct2d_stages(plan, orientation), x, config, counters)


def idct_2d(x, plan: Plan2d | None = None, *, orientation: Orientation | str | None = None,
            config: ExecConfig | None = None, counters: StageCounters | None = None) -> np.ndarray:
    """Unnormalized 2D IDCT; ``idct_2d(dct_2d(x)) == N1 N2 / 4 * x``."""
    x = as_real_tensor(x, 2, 2)
    plan = _plan_for(x, plan)
    orientation = orientation or maybe_transpose_strategy(*plan.shape)
    return run_pipeline(idct2d_stages(plan, orientation), x, config, counters)


# --- row-column baseline -------------------------------------------------------------------------


def _transpose_stage(name: str) -> Stage:
    def fn(x, ctx):
        out = np.empty((x.shape[1], x.shape[0]), dtype=x.dtype)

        def kernel(block, tally):
            out[block.start:block.stop] = x[:, block.start:block.stop].T
            if tally is not None:
                n = (block.stop - block.start) * x.shape[0]
                tally.reads += n
                tally.writes += n

        parallel_for(out.shape, ctx.config, kernel, ctx.tally)
        return out

    return Stage(name, fn)


def _prefixed(prefix: str, stages: list[Stage]) -> list[Stage]:
    return [Stage(f"{prefix}.{s.name}", s.fn, s.full_tensor) for s in stages]


def rowcol_stages(row_pass: list[Stage], col_pass: list[Stage]) -> list[Stage]:
    """1D pass on rows, transpose, 1D pass on (former) columns, transpose back: 8 stages."""
    return [*_prefixed("rows", row_pass), _transpose_stage("transpose"),
            *_prefixed("cols", col_pass), _transpose_stage("transpose-back")]


def dct_2d_rowcol(x, *, config: ExecConfig | None = None,
                  counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 2, 2)
    n1, n2 = x.shape
    stages = rowcol_stages(dct_stages(get_plan_1d(n2)), dct_stages(get_plan_1d(n1)))
    return run_pipeline(stages, x, config, counters)


def idct_2d_rowcol(x, *, config: ExecConfig | None = None,
                   counters: StageCounters | None = None) -> np.ndarray:
    x = as_real_tensor(x, 2, 2)
    n1, n2 = x.shape
    stages = rowcol_stages(idct_stages(get_plan_1d(n2)), idct_stages(get_plan_1d(n1)))
    return run_pipeline(stages, x, config, counters)


def idct_idxst_2d_rowcol(x, *, config: ExecConfig | None = None,
                         counters: StageCounters | None = None) -> np.ndarray:
    """IDCT(IDXST(x)^T)^T: IDXST along rows, then IDCT along columns."""
    x = as_real_tensor(x, 2, 2)
    n1, n2 = x.shape
    stages = rowcol_stages(idxst_stages(get_plan_1d(n2)), idct_stages(get_plan_1d(n1)))
    return run_pipeline(stages, x, config, counters)


def idxst_idct_2d_rowcol(x, *, config: ExecConfig | None = None,
                         counters: StageCounters | None = None) -> np.ndarray:
    """IDXST(IDCT(x)^T)^T: IDCT along rows, then IDXST along columns."""
    x = as_real_tensor(x, 2, 2)
    n1, n2 = x.shape
    stages = rowcol_stages(idct_stages(get_plan_1d(n2)), idxst_stages(get_plan_1d(n1)))
    return run_pipeline(stages, x, config, counters)
