import numpy as np
import pytest
from hypothesis import given, strategies as st

from sdct.executor import (ExecConfig, Stage, StageContext, StageCounters, Tally, parallel_for, partition,
                           run_counted)
from sdct.dct2d import dct2d_stages, get_plan_2d, rowcol_stages
from sdct.dct1d import dct_stages, get_plan_1d


def test_config_validation():
    with pytest.raises(ValueError):
        ExecConfig(parallelism_degree=0)
    with pytest.raises(ValueError):
        ExecConfig(chunk_size=0)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=3), st.integers(1, 50))
def test_partition_covers_space_once(space, chunk):
    blocks = partition(space, chunk)
    seen = [idx for b in blocks for idx in b.multi_indices()]
    assert seen == list(np.ndindex(*space))


def test_empty_space_is_noop():
    calls = []
    parallel_for((0,), ExecConfig(4), lambda b, t: calls.append(b))
    assert calls == []


def test_counter_visits_every_index():
    tally = Tally()

    def kernel(block, t):
        t.reads += sum(1 for _ in block.multi_indices())

    parallel_for((4, 4), ExecConfig(4, chunk_size=4), kernel, tally)
    assert tally.reads == 16


@pytest.mark.parametrize("degree", [1, 2, 4, 8])
def test_copy_kernel_deterministic(rng, degree):
    src = rng.standard_normal((37, 11))
    out = np.empty_like(src)

    def kernel(block, _):
        out[block.start:block.stop] = src[block.start:block.stop]

    parallel_for(src.shape, ExecConfig(degree, chunk_size=16), kernel)
    assert np.array_equal(out, src)


def test_kernel_errors_propagate():
    def kernel(block, _):
        raise RuntimeError("boom")

    with pytest.raises(RuntimeError):
        parallel_for((8, 8), ExecConfig(4, chunk_size=8), kernel)


def test_run_counted_stage_counts(rng):
    x = rng.standard_normal((8, 8))
    _, fused = run_counted(dct2d_stages(get_plan_2d(8, 8)), x)
    assert fused.full_tensor_stages == 3
    _, rowcol = run_counted(rowcol_stages(dct_stages(get_plan_1d(8)), dct_stages(get_plan_1d(8))), x)
    assert rowcol.full_tensor_stages == 8
    _, one = run_counted([Stage("copy", lambda d, ctx: d.copy())], x)
    assert one.full_tensor_stages == 1


def test_run_counted_rejects_empty():
    with pytest.raises(ValueError):
        run_counted([], np.zeros(2))


def test_counters_monotone(rng):
    snapshots = []
    counters = StageCounters()

    x = rng.standard_normal((6, 6))
    for stage in dct2d_stages(get_plan_2d(6, 6)):
        tally = Tally()
        x = stage.fn(x, StageContext(ExecConfig(1), tally))
        counters.record(stage.name, stage.full_tensor, tally)
        snapshots.append((counters.element_reads, counters.element_writes, counters.real_mults))
    assert all(a <= b for s, t in zip(snapshots, snapshots[1:]) for a, b in zip(s, t))
    assert all(v >= 0 for s in snapshots for v in s)
