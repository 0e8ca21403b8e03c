"""Dense row-major tensors, index maps and the gather/scatter reorder primitives.

Tensors are plain contiguous ``float64`` numpy arrays of rank 1..4. Reordering
is always out-of-place: every destination element is written exactly once, so
the routines can be split into disjoint chunks and run concurrently.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import FormatError, ShapeError

MAX_RANK = 4
MAGIC = b"DCTB"
VERSION = 1


def as_real_tensor(x, min_rank: int = 1, max_rank: int = MAX_RANK) -> np.ndarray:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if not (min_rank <= arr.ndim <= max_rank):
        raise ShapeError(f"expected rank in [{min_rank}, {max_rank}], got shape {arr.shape}")
    if any(d < 1 for d in arr.shape):
        raise ShapeError(f"every dimension must be >= 1, got {arr.shape}")
    return arr


def offset(dims: Sequence[int], index: Sequence[int]) -> int:
    """Row-major flat offset of ``index`` within ``dims``."""
    if len(dims) != len(index):
        raise ShapeError(f"index rank {len(index)} does not match dims rank {len(dims)}")
    off = 0
    for d, i in zip(dims, index):
        if not 0 <= i < d:
            raise IndexError(f"index {tuple(index)} out of range for dims {tuple(dims)}")
        off = off * d + i
    return off


@dataclass(frozen=True)
class IndexMap:
    """A bijection from the index space ``src_shape`` onto ``dst_shape``.

    ``table[i]`` is the flat destination offset of flat source offset ``i``.
    """

    src_shape: tuple[int, ...]
    dst_shape: tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        if int(np.prod(self.src_shape)) != int(np.prod(self.dst_shape)):
            raise ShapeError("index map must preserve the element count")
        if self.table.shape != (int(np.prod(self.src_shape)),):
            raise ShapeError("index map table has the wrong length")
        self.table.flags.writeable = False

    @classmethod
    def from_rule(cls, src_shape, dst_shape, rule: Callable) -> "IndexMap":
        """Build from a vectorized rule taking source index arrays to destination index arrays."""
        src_shape, dst_shape = tuple(src_shape), tuple(dst_shape)
        idx = np.indices(src_shape).reshape(len(src_shape), -1)
        dst = rule(*idx)
        if len(src_shape) == 1 and len(dst_shape) == 1 and not isinstance(dst, tuple):
            dst = (dst,)
        table = np.ravel_multi_index(tuple(np.asarray(d) for d in dst), dst_shape)
        return cls(src_shape, dst_shape, table.astype(np.intp))

    @classmethod
    def identity(cls, shape) -> "IndexMap":
        shape = tuple(shape)
        return cls(shape, shape, np.arange(int(np.prod(shape)), dtype=np.intp))

    @classmethod
    def reversal(cls, n: int) -> "IndexMap":
        return cls((n,), (n,), np.arange(n - 1, -1, -1, dtype=np.intp))

    def inverse(self) -> "IndexMap":
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(self.table.size, dtype=np.intp)
        return IndexMap(self.dst_shape, self.src_shape, inv)

    def is_bijection(self) -> bool:
        seen = np.zeros(self.table.size, dtype=bool)
        seen[self.table] = True
        return bool(seen.all())

    def compose(self, then: "IndexMap") -> "IndexMap":
        """The map applying ``self`` first, then ``then``."""
        if then.src_shape != self.dst_shape:
            raise ShapeError("cannot compose maps with mismatched shapes")
        return IndexMap(self.src_shape, then.dst_shape, then.table[self.table])


def scatter_permute(src, m: IndexMap, out: np.ndarray | None = None) -> np.ndarray:
    """``out[m(i)] = src[i]``: contiguous reads, scattered writes."""
    src = np.asarray(src)
    if src.shape != m.src_shape:
        raise ShapeError(f"source shape {src.shape} != map source shape {m.src_shape}")
    if out is None:
        out = np.empty(m.dst_shape, dtype=src.dtype)
    out.reshape(-1)[m.table] = src.reshape(-1)
    return out


def gather_permute(src, m: IndexMap) -> np.ndarray:
    """``out[i] = src[m(i)]``: scattered reads, contiguous writes.

    The output has ``m.src_shape`` and ``src`` must have ``m.dst_shape``, so
    ``gather_permute(x, m.inverse())`` equals ``scatter_permute(x, m)``.
    """
    src = np.asarray(src)
    if src.shape != m.dst_shape:
        raise ShapeError(f"source shape {src.shape} != map destination shape {m.dst_shape}")
    return src.reshape(-1)[m.table].reshape(m.src_shape)


def transpose2d(src) -> np.ndarray:
    src = np.asarray(src)
    if src.ndim != 2:
        raise ShapeError(f"transpose2d needs a rank-2 tensor, got shape {src.shape}")
    return np.ascontiguousarray(src.T)


# --- reorder index rules ---------------------------------------------------


def even_odd_dest(n: int) -> np.ndarray:
    """Destination of each source position under the even-first / odd-reversed reorder.

    Even ``m`` goes to ``m/2``; odd ``m`` goes to ``n - (m+1)/2``.
    """
    m = np.arange(n)
    return np.where(m % 2 == 0, m // 2, n - (m + 1) // 2).astype(np.intp)


def even_odd_map(shape) -> IndexMap:
    """Separable even/odd reorder applied along every axis of ``shape``."""
    shape = tuple(shape)
    dests = [even_odd_dest(n) for n in shape]
    return IndexMap.from_rule(shape, shape, lambda *idx: tuple(d[i] for d, i in zip(dests, idx)))


# --- DCTB file format ----------------------------------------------------------


def write_dctb(path, x) -> None:
    x = as_real_tensor(x)
    header = MAGIC + struct.pack("<BB", VERSION, x.ndim) + struct.pack(f"<{x.ndim}Q", *x.shape)
    Path(path).write_bytes(header + x.astype("<f8").tobytes())


def read_dctb(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < 6 or raw[:4] != MAGIC:
        raise FormatError(f"{path}: bad magic, not a DCTB tensor file")
    version, rank = raw[4], raw[5]
    if version != VERSION:
        raise FormatError(f"{path}: unsupported DCTB version {version}")
    if not 1 <= rank <= MAX_RANK:
        raise FormatError(f"{path}: unsupported rank {rank}")
    end = 6 + 8 * rank
    if len(raw) < end:
        raise FormatError(f"{path}: truncated header")
    dims = struct.unpack(f"<{rank}Q", raw[6:end])
    if any(d < 1 for d in dims):
        raise FormatError(f"{path}: zero-sized dimension in {dims}")
    count = int(np.prod(dims))
    if len(raw) - end != 8 * count:
        raise FormatError(f"{path}: payload has {len(raw) - end} bytes, expected {8 * count}")
    return np.frombuffer(raw, dtype="<f8", offset=end).astype(np.float64).reshape(dims)
