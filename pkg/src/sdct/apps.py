"""Applications built on the transforms: image compression, a spectral force demo, Amdahl's law."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dct2d import dct_2d, idct_2d
from .errors import FormatError, UsageError
from .executor import ExecConfig
from .ext import idct_idxst_2d, idxst_idct_2d
from .tensor import as_real_tensor

MAXVAL = 255


@dataclass(frozen=True)
class GrayImage:
    width: int
    height: int
    samples: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self):
        if self.samples.shape != (self.height, self.width) or self.samples.dtype != np.uint8:
            raise FormatError("samples must be a uint8 array of shape (height, width)")

    @classmethod
    def from_array(cls, a) -> "GrayImage":
        a = np.asarray(a)
        if a.ndim != 2:
            raise FormatError(f"grayscale image must be 2D, got shape {a.shape}")
        return cls(a.shape[1], a.shape[0], np.ascontiguousarray(a, dtype=np.uint8))


# --- PGM -------------------------------------------------------------------------------

_TOKEN = re.compile(rb"#[^\n\r]*|\S+")


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """First ``count`` whitespace-separated header tokens (comments skipped) and the end offset."""
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(data):
        if m.group().startswith(b"#"):
            continue
        tokens.append(m.group())
        pos = m.end()
        if len(tokens) == count:
            break
    return tokens, pos


def parse_pgm(data: bytes) -> GrayImage:
    tokens, pos = _header_tokens(data, 4)
    if len(tokens) < 4 or tokens[0] not in (b"P5", b"P2"):
        raise FormatError("not a P5/P2 PGM file")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as exc:
        raise FormatError(f"bad PGM header: {exc}") from None
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    if maxval != MAXVAL:
        raise FormatError(f"only maxval {MAXVAL} is supported, got {maxval}")
    n = width * height
    if tokens[0] == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1:pos + 1 + n]
        if len(raster) != n:
            raise FormatError(f"truncated P5 raster: {len(raster)} of {n} bytes")
        samples = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = [t for t in _TOKEN.findall(data[pos:]) if not t.startswith(b"#")]
        if len(body) != n:
            raise FormatError(f"P2 raster has {len(body)} samples, expected {n}")
        try:
            values = np.array([int(t) for t in body])
        except ValueError as exc:
            raise FormatError(f"bad P2 sample: {exc}") from None
        if values.min() < 0 or values.max() > MAXVAL:
            raise FormatError("P2 sample out of range")
        samples = values.astype(np.uint8)
    return GrayImage(width, height, samples.reshape(height, width).copy())


def read_pgm(path) -> GrayImage:
    return parse_pgm(Path(path).read_bytes())


def encode_pgm(img: GrayImage) -> bytes:
    return b"P5\n%d %d\n%d\n" % (img.width, img.height, MAXVAL) + img.samples.tobytes()


def write_pgm(path, img: GrayImage) -> None:
    Path(path).write_bytes(encode_pgm(img))


# --- compression --------------------------------------------------------------------------


@dataclass(frozen=True)
class CompressResult:
    image: GrayImage
    zero_fraction: float
    psnr: float

    def psnr_text(self) -> str:
        return "inf" if math.isinf(self.psnr) else f"{self.psnr:.2f}"


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    mse = np.mean((a.astype(np.float64) - b.astype(np.float64)) ** 2)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(MAXVAL ** 2 / mse)


def threshold(coeffs: np.ndarray, epsilon: float) -> np.ndarray:
    """Zero every coefficient with ``|B| < epsilon`` (raw unnormalized magnitudes)."""
    return np.where(np.abs(coeffs) < epsilon, 0.0, coeffs)


def compress(img: GrayImage, epsilon: float = 0.0, *, drop_all: bool = False,
             config: ExecConfig | None = None) -> CompressResult:
    """Whole-image DCT, magnitude threshold, IDCT with the ``4 / (N1 N2)`` rescale."""
    if not drop_all and not epsilon >= 0:
        raise UsageError(f"epsilon must be >= 0, got {epsilon}")
    if drop_all:
        epsilon = math.inf
    a = img.samples.astype(np.float64)
    b = dct_2d(a, config=config)
    c = np.zeros_like(b) if drop_all else threshold(b, epsilon)
    n1, n2 = a.shape
    d = idct_2d(c, config=config) * (4.0 / (n1 * n2))
    out = np.clip(np.rint(d), 0, MAXVAL).astype(np.uint8)
    zero_fraction = float(np.count_nonzero(c == 0) / c.size)
    return CompressResult(GrayImage.from_array(out), zero_fraction, psnr(img.samples, out))


# --- electrostatic force demo ------------------------------------------------------------


@dataclass(frozen=True)
class ForceFields:
    xi1: np.ndarray
    xi2: np.ndarray


def spectral_weights(n1: int, n2: int) -> tuple[np.ndarray, np.ndarray]:
    """``w_i = pi k_i / N_i`` on the coefficient grid (axis 0, axis 1)."""
    w1 = (np.pi * np.arange(n1) / n1)[:, None] * np.ones((1, n2))
    w2 = np.ones((n1, 1)) * (np.pi * np.arange(n2) / n2)[None, :]
    return w1, w2


def scaled_potential(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Inverse-Laplacian weights; ``a1`` pairs with the axis-1 weight, ``a2`` with axis 0.

    Each scaled spectrum carries the frequency of the axis that its composite
    evaluates with IDXST (the derivative axis). DC is zeroed.
    """
    w1, w2 = spectral_weights(*a.shape)
    denom = w1 ** 2 + w2 ** 2
    denom[0, 0] = 1.0
    inv = a / denom
    inv[0, 0] = 0.0
    return inv * w2, inv * w1


def force_demo(rho, *, config: ExecConfig | None = None) -> ForceFields:
    rho = as_real_tensor(rho, 2, 2)
    a = dct_2d(rho, config=config)
    a1, a2 = scaled_potential(a)
    return ForceFields(idct_idxst_2d(a1, config=config), idxst_idct_2d(a2, config=config))


# --- Amdahl's law -----------------------------------------------------------------------------


def amdahl_speedup(p: float, s: float) -> float:
    """Overall speedup when a fraction ``p`` of the runtime is accelerated by ``s``."""
    if not 0.0 <= p <= 1.0:
        raise UsageError(f"fraction p must lie in [0, 1], got {p}")
    if not s > 0:
        raise UsageError(f"speedup factor s must be > 0, got {s}")
    return 1.0 / ((1.0 - p) + p / s)
