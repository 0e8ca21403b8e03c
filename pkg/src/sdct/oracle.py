"""Brute-force transforms evaluated straight from their defining sums.

These are the ground truth for the fast paths. Nothing here touches the FFT
backend. Sums use ``math.fsum`` (exactly rounded) and cosine arguments are
reduced modulo a full period in integer arithmetic first, so the oracles stay
well below the 1e-10 comparison tolerance for the sizes the tests use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor import as_real_tensor


@dataclass(frozen=True)
class OracleResult:
    values: np.ndarray
    op_count: int


def _dct_kernel(n: int) -> np.ndarray:
    """``K[k, m] = cos(pi (2m+1) k / 2n)``."""
    k = np.arange(n)[:, None]
    m = np.arange(n)[None, :]
    return np.cos(np.pi * (((2 * m + 1) * k) % (4 * n)) / (2 * n))


def _idct_kernel(n: int) -> np.ndarray:
    """``K[k, m] = w_m cos(pi m (2k+1) / 2n)`` with ``w_0 = 1/2``."""
    k = np.arange(n)[:, None]
    m = np.arange(n)[None, :]
    kern = np.cos(np.pi * ((m * (2 * k + 1)) % (4 * n)) / (2 * n))
    kern[:, 0] = 0.5
    return kern


def _direct_1d(x, kernel) -> OracleResult:
    x = as_real_tensor(x, 1, 1)
    n = x.size
    kern = kernel(n)
    vals = np.array([math.fsum(kern[k] * x) for k in range(n)])
    return OracleResult(vals, n * n)


def dct_oracle_1d(x) -> OracleResult:
    """``X_k = sum_n x_n cos(pi/N (n + 1/2) k)``."""
    return _direct_1d(x, _dct_kernel)


def idct_oracle_1d(x) -> OracleResult:
    """``X_k = x_0/2 + sum_{n>=1} x_n cos(pi/N n (k + 1/2))``."""
    return _direct_1d(x, _idct_kernel)


def dct_oracle_2d(x) -> OracleResult:
    """Quadruple loop: every output is one explicit sum over all inputs."""
    x = as_real_tensor(x, 2, 2)
    n1, n2 = x.shape
    k1, k2 = _dct_kernel(n1), _dct_kernel(n2)
    out = np.empty((n1, n2))
    for a in range(n1):
        for b in range(n2):
            out[a, b] = math.fsum((x * np.outer(k1[a], k2[b])).ravel())
    return OracleResult(out, (n1 * n2) ** 2)


def apply_separable(x, kernels) -> OracleResult:
    """Apply a per-axis 1D direct transform along every axis in turn.

    ``kernels`` holds one kernel builder (``_dct_kernel`` style) per axis, or
    ``None`` to leave that axis untouched.
    """
    y = np.array(x, dtype=np.float64)
    ops = 0
    for axis, kernel in enumerate(kernels):
        if kernel is None:
            continue
        moved = np.moveaxis(y, axis, -1)
        n = moved.shape[-1]
        kern = kernel(n)
        res = np.empty_like(moved)
        for idx in np.ndindex(*moved.shape[:-1]):
            row = moved[idx]
            res[idx] = [math.fsum(kern[k] * row) for k in range(n)]
        ops += moved.size * n
        y = np.moveaxis(res, -1, axis)
    return OracleResult(np.ascontiguousarray(y), ops)


def dct_oracle_nd(x) -> OracleResult:
    """Composition of 1D DCT oracles along every axis."""
    x = np.asarray(x, dtype=np.float64)
    return apply_separable(x, [_dct_kernel] * x.ndim)


def idct_oracle_nd(x) -> OracleResult:
    x = np.asarray(x, dtype=np.float64)
    return apply_separable(x, [_idct_kernel] * x.ndim)


def shift_reverse(x) -> np.ndarray:
    """``y_n = x_{N-n}`` with ``x_N := 0`` (so ``y_0 = 0``)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.zeros_like(x)
    y[1:] = x[:0:-1]
    return y


def idxst_oracle_1d(x) -> OracleResult:
    """``IDXST(x)_k = (-1)^k IDCT({x_{N-n}})_k`` with ``x_N = 0``."""
    x = as_real_tensor(x, 1, 1)
    res = idct_oracle_1d(shift_reverse(x))
    signs = np.where(np.arange(x.size) % 2 == 0, 1.0, -1.0)
    return OracleResult(res.values * signs, res.op_count)


def _idxst_kernel(n: int) -> np.ndarray:
    # row k: (-1)^k * sum_m idct[k, m] * x[n - m] (x[n] = 0)
    base = _idct_kernel(n)
    kern = np.zeros((n, n))
    kern[:, 1:] = base[:, :0:-1]
    kern[1::2] *= -1.0
    return kern


def idct_idxst_oracle_2d(x) -> OracleResult:
    """IDCT(IDXST(x)^T)^T: IDXST along the last axis, IDCT along axis 0."""
    return apply_separable(as_real_tensor(x, 2, 2), [_idct_kernel, _idxst_kernel])


def idxst_idct_oracle_2d(x) -> OracleResult:
    """IDXST(IDCT(x)^T)^T: IDCT along the last axis, IDXST along axis 0."""
    return apply_separable(as_real_tensor(x, 2, 2), [_idxst_kernel, _idct_kernel])
