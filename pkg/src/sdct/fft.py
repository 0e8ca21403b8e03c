"""Self-contained FFT backend with the one-sided real-input convention.

Power-of-two lengths use an iterative radix-2 decimation-in-time FFT that is
vectorized over a batch of rows. Every other length goes through Bluestein's
chirp-z transform, zero-padded to a power of two >= 2N-1. Forward and inverse
transforms are both unnormalized: ``irfft(rfft(x)) == N * x``.

Real transforms run the complex FFT and keep the first ``N//2 + 1`` bins of
the last axis. Multi-dimensional transforms apply 1D passes axis by axis,
transposing so the active axis is contiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import PlanError, ShapeError
from .executor import ExecConfig, parallel_for

# Rows handed to one FFT work unit; larger than the elementwise default so the
# per-stage Python overhead is amortized.
FFT_CHUNK = 1 << 16


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class FftWorkspace:
    size: int
    stage_twiddles: tuple[np.ndarray, ...] = field(repr=False)
    chirp: np.ndarray | None = field(default=None, repr=False)
    chirp_filter: np.ndarray | None = field(default=None, repr=False)
    inner: "FftWorkspace | None" = field(default=None, repr=False)

    @property
    def bluestein(self) -> bool:
        return self.chirp is not None


def _radix2_twiddles(n: int) -> tuple[np.ndarray, ...]:
    out = []
    m = 1
    while m < n:
        k = np.arange(m)
        out.append(_readonly(np.exp(-1j * np.pi * k / m).reshape(m, 1)))
        m *= 2
    return tuple(out)


@lru_cache(maxsize=64)
def get_workspace(n: int) -> FftWorkspace:
    if n < 1:
        raise PlanError(f"FFT length must be >= 1, got {n}")
    if _is_pow2(n):
        return FftWorkspace(n, _radix2_twiddles(n))
    m = 1 << (2 * n - 2).bit_length()
    k = np.arange(n)
    # reduce n^2 mod 2n before scaling so the phase stays exact for large n
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    b = np.zeros(m, dtype=np.complex128)
    b[:n] = np.conj(chirp)
    b[m - n + 1:] = np.conj(chirp[1:])[::-1]
    inner = get_workspace(m)
    bf = _fft_pow2(b.reshape(1, m), inner).reshape(m)
    return FftWorkspace(n, (), _readonly(chirp), _readonly(bf), inner)


def _fft_pow2(z: np.ndarray, ws: FftWorkspace) -> np.ndarray:
    rows, n = z.shape
    x = z.reshape(rows, 1, n)
    m = 1
    for tw in ws.stage_twiddles:
        half = x.shape[2] // 2
        even = x[:, :, :half]
        t = x[:, :, half:] * tw
        y = np.empty((rows, 2 * m, half), dtype=np.complex128)
        np.add(even, t, out=y[:, :m])
        np.subtract(even, t, out=y[:, m:])
        x = y
        m *= 2
    return x.reshape(rows, n)


def _fft_rows(z: np.ndarray, ws: FftWorkspace) -> np.ndarray:
    if not ws.bluestein:
        return _fft_pow2(z, ws)
    n, m = ws.size, ws.inner.size
    a = np.zeros((z.shape[0], m), dtype=np.complex128)
    np.multiply(z, ws.chirp, out=a[:, :n])
    spec = _fft_pow2(a, ws.inner)
    spec *= ws.chirp_filter
    conv = np.conj(_fft_pow2(np.conj(spec), ws.inner))
    return conv[:, :n] * (ws.chirp / m)


def fft(z, ws: FftWorkspace | None = None, config: ExecConfig | None = None,
        inverse: bool = False) -> np.ndarray:
    """Unnormalized complex FFT along the last axis, parallel over rows."""
    z = np.asarray(z, dtype=np.complex128)
    n = z.shape[-1]
    ws = ws or get_workspace(n)
    if ws.size != n:
        raise PlanError(f"workspace size {ws.size} does not match length {n}")
    rows = z.reshape(-1, n)
    if inverse:
        rows = np.conj(rows)
    out = np.empty_like(rows)
    config = config or ExecConfig()
    chunk = ExecConfig(config.parallelism_degree, max(config.chunk_size, FFT_CHUNK))

    def kernel(block, _tally):
        out[block.start:block.stop] = _fft_rows(rows[block.start:block.stop], ws)

    parallel_for(rows.shape, chunk, kernel)
    if inverse:
        np.conj(out, out=out)
    return out.reshape(z.shape)


def _fft_axis(z: np.ndarray, axis: int, config, inverse: bool) -> np.ndarray:
    if axis == z.ndim - 1 or axis == -1:
        return fft(z, config=config, inverse=inverse)
    moved = np.ascontiguousarray(np.moveaxis(z, axis, -1))
    return np.ascontiguousarray(np.moveaxis(fft(moved, config=config, inverse=inverse), -1, axis))


# --- one-sided real transforms -------------------------------------------------


def half_length(n: int) -> int:
    return n // 2 + 1


@dataclass(frozen=True)
class HalfSpectrum:
    """First ``N_d//2 + 1`` bins of the last axis of a real-input spectrum."""

    logical_dims: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.logical_dims)
        object.__setattr__(self, "logical_dims", dims)
        expected = dims[:-1] + (half_length(dims[-1]),)
        if self.data.shape != expected:
            raise ShapeError(f"half spectrum data {self.data.shape} != {expected} for dims {dims}")

    def full(self) -> np.ndarray:
        return expand_hermitian(self)


def expand_hermitian(hs: HalfSpectrum) -> np.ndarray:
    """Rebuild the full spectrum from ``X(k) = conj(X(-k mod N))``."""
    dims = hs.logical_dims
    n = dims[-1]
    m = half_length(n)
    full = np.empty(dims, dtype=np.complex128)
    full[..., :m] = hs.data
    if n > m:
        mirrored = hs.data[..., 1:n - m + 1]
        # negate every leading index mod N as well as the last one
        for ax in range(len(dims) - 1):
            mirrored = np.roll(np.flip(mirrored, axis=ax), 1, axis=ax)
        full[..., m:] = np.conj(mirrored[..., ::-1])
    return full


def rfftn(x, config: ExecConfig | None = None) -> HalfSpectrum:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim < 1 or any(d < 1 for d in x.shape):
        raise ShapeError(f"rfft needs a non-empty tensor, got shape {x.shape}")
    n = x.shape[-1]
    spec = fft(x, config=config)[..., :half_length(n)]
    spec = np.ascontiguousarray(spec)
    for axis in range(x.ndim - 2, -1, -1):
        spec = _fft_axis(spec, axis, config, inverse=False)
    return HalfSpectrum(x.shape, spec)


def irfftn(hs: HalfSpectrum, config: ExecConfig | None = None) -> np.ndarray:
    z = hs.data
    for axis in range(len(hs.logical_dims) - 1):
        z = _fft_axis(z, axis, config, inverse=True)
    rows = _expand_last(z, hs.logical_dims[-1])
    return np.ascontiguousarray(fft(rows, config=config, inverse=True).real)


def _expand_last(z: np.ndarray, n: int) -> np.ndarray:
    """Hermitian expansion along the last axis only (rows are independent)."""
    m = half_length(n)
    full = np.empty((*z.shape[:-1], n), dtype=np.complex128)
    full[..., :m] = z
    if n > m:
        full[..., m:] = np.conj(z[..., n - m:0:-1])
    return full


def rfft_rows(x, config: ExecConfig | None = None) -> np.ndarray:
    """Independent one-sided real FFTs of every row (last axis)."""
    x = np.asarray(x, dtype=np.float64)
    return np.ascontiguousarray(fft(x, config=config)[..., :half_length(x.shape[-1])])


def irfft_rows(z, n: int, config: ExecConfig | None = None) -> np.ndarray:
    """Inverse of :func:`rfft_rows` (unnormalized) for rows of logical length ``n``."""
    z = np.asarray(z, dtype=np.complex128)
    if z.shape[-1] != half_length(n):
        raise ShapeError(f"row spectrum length {z.shape[-1]} != {half_length(n)} for n={n}")
    return np.ascontiguousarray(fft(_expand_last(z, n), config=config, inverse=True).real)


def _check_ws(ws: FftWorkspace | None, n: int) -> None:
    if ws is not None and ws.size != n:
        raise PlanError(f"workspace size {ws.size} does not match length {n}")


def rfft_1d(x, ws: FftWorkspace | None = None, config: ExecConfig | None = None) -> HalfSpectrum:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError(f"rfft_1d needs rank 1, got {x.shape}")
    _check_ws(ws, x.shape[0])
    return rfftn(x, config)


def irfft_1d(hs: HalfSpectrum, ws: FftWorkspace | None = None,
             config: ExecConfig | None = None) -> np.ndarray:
    if len(hs.logical_dims) != 1:
        raise ShapeError("irfft_1d needs a rank-1 half spectrum")
    _check_ws(ws, hs.logical_dims[0])
    return irfftn(hs, config)


def rfft_2d(x, config: ExecConfig | None = None) -> HalfSpectrum:
    if np.ndim(x) != 2:
        raise ShapeError(f"rfft_2d needs rank 2, got {np.shape(x)}")
    return rfftn(x, config)


def irfft_2d(hs: HalfSpectrum, config: ExecConfig | None = None) -> np.ndarray:
    if len(hs.logical_dims) != 2:
        raise ShapeError("irfft_2d needs a rank-2 half spectrum")
    return irfftn(hs, config)


def rfft_3d(x, config: ExecConfig | None = None) -> HalfSpectrum:
    if np.ndim(x) != 3:
        raise ShapeError(f"rfft_3d needs rank 3, got {np.shape(x)}")
    return rfftn(x, config)


def irfft_3d(hs: HalfSpectrum, config: ExecConfig | None = None) -> np.ndarray:
    if len(hs.logical_dims) != 3:
        raise ShapeError("irfft_3d needs a rank-3 half spectrum")
    return irfftn(hs, config)


# --- direct-sum oracles ----------------------------------------------------------


def dft_naive(x, inverse: bool = False) -> np.ndarray:
    """Direct O(N^2) DFT of a 1D sequence (unnormalized in both directions)."""
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    n = x.size
    if n < 1:
        raise ShapeError("dft_naive needs at least one sample")
    k = np.arange(n)
    phase = np.outer(k, k) % n
    sign = 1.0 if inverse else -1.0
    return np.exp(sign * 2j * np.pi * phase / n) @ x


def dft_naive_nd(x, inverse: bool = False) -> np.ndarray:
    """Direct multi-dimensional DFT: one explicit sum over all input indices per output."""
    x = np.asarray(x, dtype=np.complex128)
    dims = x.shape
    sign = 1.0 if inverse else -1.0
    grids = np.indices(dims).reshape(len(dims), -1)
    out = np.empty(x.size, dtype=np.complex128)
    flat = x.reshape(-1)
    for j, k in enumerate(grids.T):
        # phase as a fraction of a turn, summed per axis and reduced mod 1
        frac = np.zeros(x.size)
        for ax, n in enumerate(dims):
            frac += (grids[ax] * k[ax] % n) / n
        frac %= 1.0
        out[j] = np.sum(flat * np.exp(sign * 2j * np.pi * frac))
    return out.reshape(dims)
