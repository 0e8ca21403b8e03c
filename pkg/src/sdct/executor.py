"""Chunked data-parallel executor and stage/element/arithmetic counters.

Kernels are vectorized over a block of leading-axis indices rather than called
once per element. The partition into blocks depends only on the index space
and ``chunk_size``, never on the worker count, and every output element has a
single writer, so results are bitwise identical for any parallelism degree.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class ExecConfig:
    parallelism_degree: int = field(default_factory=lambda: os.cpu_count() or 1)
    chunk_size: int = 4096

    def __post_init__(self):
        if self.parallelism_degree < 1:
            raise ValueError("parallelism_degree must be >= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")


SERIAL = ExecConfig(parallelism_degree=1)


@dataclass
class Tally:
    """Per-block or per-stage operation counts."""

    reads: int = 0
    writes: int = 0
    mults: int = 0
    adds: int = 0
    # work-item class -> [items, mults, adds]
    items: dict[str, list[int]] = field(default_factory=lambda: defaultdict(lambda: [0, 0, 0]))

    def work(self, kind: str, count: int, mults: int, adds: int) -> None:
        """Record ``count`` work items of class ``kind``, each costing the given op counts."""
        rec = self.items[kind]
        rec[0] += count
        rec[1] += count * mults
        rec[2] += count * adds
        self.mults += count * mults
        self.adds += count * adds

    def merge(self, other: "Tally") -> None:
        self.reads += other.reads
        self.writes += other.writes
        self.mults += other.mults
        self.adds += other.adds
        for k, (n, m, a) in other.items.items():
            rec = self.items[k]
            rec[0] += n
            rec[1] += m
            rec[2] += a


@dataclass
class StageRecord:
    name: str
    full_tensor: bool
    tally: Tally


@dataclass
class StageCounters:
    full_tensor_stages: int = 0
    element_reads: int = 0
    element_writes: int = 0
    real_mults: int = 0
    real_adds: int = 0
    stages: list[StageRecord] = field(default_factory=list)

    def record(self, name: str, full_tensor: bool, tally: Tally) -> None:
        self.stages.append(StageRecord(name, full_tensor, tally))
        self.full_tensor_stages += int(full_tensor)
        self.element_reads += tally.reads
        self.element_writes += tally.writes
        self.real_mults += tally.mults
        self.real_adds += tally.adds

    def stage(self, name: str) -> StageRecord:
        matches = [s for s in self.stages if s.name == name]
        if len(matches) != 1:
            raise KeyError(f"expected one stage named {name!r}, found {len(matches)}")
        return matches[0]

    def stage_names(self) -> list[str]:
        return [s.name for s in self.stages]


@dataclass(frozen=True)
class Block:
    """Leading-axis index range ``[start, stop)`` of a work space."""

    start: int
    stop: int
    space: tuple[int, ...]

    def multi_indices(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.start, self.stop):
            for rest in np.ndindex(*self.space[1:]):
                yield (i, *rest)


def partition(space: Sequence[int], chunk_size: int) -> list[Block]:
    space = tuple(int(d) for d in space)
    if not space or any(d == 0 for d in space):
        return []
    inner = int(np.prod(space[1:], dtype=np.int64))
    rows = max(1, chunk_size // max(inner, 1))
    return [Block(lo, min(lo + rows, space[0]), space) for lo in range(0, space[0], rows)]


def parallel_for(
    space: Sequence[int],
    config: ExecConfig | None,
    kernel: Callable[[Block, Tally | None], None],
    tally: Tally | None = None,
) -> None:
    """Run ``kernel`` over disjoint blocks of ``space``.

    When ``tally`` is given, each block gets a private ``Tally`` that is merged
    into ``tally`` after all blocks complete.
    """
    config = config or ExecConfig()
    blocks = partition(space, config.chunk_size)
    if not blocks:
        return
    locals_ = [Tally() if tally is not None else None for _ in blocks]
    if config.parallelism_degree == 1 or len(blocks) == 1:
        for b, t in zip(blocks, locals_):
            kernel(b, t)
    else:
        with ThreadPoolExecutor(max_workers=config.parallelism_degree) as pool:
            # list() propagates kernel exceptions
            list(pool.map(kernel, blocks, locals_))
    if tally is not None:
        for t in locals_:
            tally.merge(t)


@dataclass
class StageContext:
    config: ExecConfig
    tally: Tally | None


@dataclass(frozen=True)
class Stage:
    name: str
    fn: Callable[[Any, StageContext], Any]
    full_tensor: bool = True


def run_pipeline(
    pipeline: Sequence[Stage],
    data,
    config: ExecConfig | None = None,
    counters: StageCounters | None = None,
):
    config = config or ExecConfig()
    for stage in pipeline:
        tally = Tally() if counters is not None else None
        data = stage.fn(data, StageContext(config, tally))
        if counters is not None:
            counters.record(stage.name, stage.full_tensor, tally)
    return data


def run_counted(pipeline: Sequence[Stage], data, config: ExecConfig | None = None):
    if not pipeline:
        raise ValueError("pipeline must contain at least one stage")
    counters = StageCounters()
    out = run_pipeline(pipeline, data, config, counters)
    return out, counters
