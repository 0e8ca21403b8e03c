import dataclasses

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import assert_rel
from sdct.dct1d import dct_1d, preprocess_n
from sdct.dct2d import (Orientation, dct2d_postprocess_fused, dct2d_preprocess, dct_2d, dct_2d_rowcol,
                        get_plan_2d, idct2d_postprocess, idct2d_preprocess, idct_2d, idct_2d_rowcol,
                        maybe_transpose_strategy)
from sdct.errors import PlanError, ShapeError
from sdct.executor import ExecConfig, StageCounters, Tally
from sdct.fft import HalfSpectrum, rfft_2d
from sdct.oracle import dct_oracle_2d, dct_oracle_nd, idct_oracle_nd

SMALL = [(a, b) for a in range(1, 9) for b in range(1, 9)]


def naive_post(hs: HalfSpectrum, plan) -> np.ndarray:
    """Unmerged postprocess: one output per evaluation, reading the expanded full spectrum."""
    full = hs.full()
    n1, n2 = plan.shape
    out = np.empty((n1, n2))
    for k1 in range(n1):
        for k2 in range(n2):
            a, b = plan.twiddle_a[k1], plan.twiddle_b[k2]
            x1, x2 = full[k1, k2], full[(n1 - k1) % n1, k2]
            out[k1, k2] = 0.5 * (b * (a * x1 + np.conj(a) * x2)).real
    return out


def naive_idct_pre(x: np.ndarray) -> np.ndarray:
    n1, n2 = x.shape

    def at(i, j):
        return x[i, j] if i < n1 and j < n2 else 0.0

    out = np.empty((n1, n2 // 2 + 1), dtype=complex)
    for p in range(n1):
        for q in range(n2 // 2 + 1):
            coef = np.exp(0.5j * np.pi * p / n1) * np.exp(0.5j * np.pi * q / n2) / 4
            out[p, q] = coef * (at(p, q) - at(n1 - p, n2 - q) - 1j * (at(n1 - p, q) + at(p, n2 - q)))
    return out


# --- preprocess / reorder --------------------------------------------------------------


def test_preprocess_small():
    assert dct2d_preprocess([[4.0]]).tolist() == [[4.0]]
    x = np.array([[1.0, 2], [3, 4]])
    assert np.array_equal(dct2d_preprocess(x), x)


def test_preprocess_is_rowwise_then_columnwise(rng):
    x = rng.standard_normal((4, 4))
    rows = np.array([preprocess_n(r) for r in x])
    assert np.array_equal(dct2d_preprocess(x), np.array([preprocess_n(c) for c in rows.T]).T)


def test_postprocess_inverts_preprocess(rng):
    x = rng.standard_normal((5, 6))
    assert np.array_equal(idct2d_postprocess(dct2d_preprocess(x)), x)
    assert idct2d_postprocess([[3.0]]).tolist() == [[3.0]]


@pytest.mark.parametrize("shape", SMALL)
def test_reorder_bijective(shape):
    m = get_plan_2d(*shape).reorder
    assert m.is_bijection()
    assert np.array_equal(m.compose(m.inverse()).table, np.arange(m.table.size))


# --- fused postprocess -------------------------------------------------------------------


def test_fused_post_zero():
    plan = get_plan_2d(4, 6)
    hs = HalfSpectrum((4, 6), np.zeros((4, 4), complex))
    assert np.array_equal(dct2d_postprocess_fused(hs, plan), np.zeros((4, 6)))


def test_fused_post_dc(rng):
    plan = get_plan_2d(5, 4)
    hs = rfft_2d(rng.standard_normal((5, 4)))
    # a = b = 1 and the row partner of 0 is 0 itself: y(0,0) = Re X(0,0)
    assert dct2d_postprocess_fused(hs, plan)[0, 0] == pytest.approx(hs.data[0, 0].real, rel=1e-15)


@pytest.mark.parametrize("shape", [(6, 6), (5, 7), (4, 9), (7, 2), (1, 5), (6, 1)])
def test_fused_post_matches_naive(rng, shape):
    plan = get_plan_2d(*shape)
    hs = rfft_2d(rng.standard_normal(shape))
    assert_rel(dct2d_postprocess_fused(hs, plan), naive_post(hs, plan))


def test_fused_post_shape_error():
    with pytest.raises(ShapeError):
        dct2d_postprocess_fused(HalfSpectrum((4, 4), np.zeros((4, 3), complex)), get_plan_2d(4, 5))


# --- end to end -----------------------------------------------------------------------------


def test_dct_2d_examples():
    assert np.allclose(dct_2d(np.ones((2, 2))), [[4, 0], [0, 0]], atol=1e-15)
    delta = np.array([[1.0, 0], [0, 0]])
    c = np.cos(np.pi / 4)
    assert np.allclose(dct_2d(delta), [[1, c], [c, c * c]])


@pytest.mark.parametrize("shape", SMALL + [(5, 7), (16, 12)])
def test_oracle_equivalence(rng, shape):
    x = rng.standard_normal(shape)
    ref = dct_oracle_2d(x).values
    fused, rowcol = dct_2d(x), dct_2d_rowcol(x)
    assert_rel(fused, ref)
    assert_rel(rowcol, ref)
    assert_rel(fused, rowcol)
    iref = idct_oracle_nd(x).values
    assert_rel(idct_2d(x), iref)
    assert_rel(idct_2d_rowcol(x), iref)


def test_oracle_equivalence_100x64(rng):
    x = rng.standard_normal((100, 64))
    ref = dct_oracle_nd(x).values
    assert_rel(dct_2d(x), ref)
    assert_rel(dct_2d_rowcol(x), ref)


def test_idct2d_preprocess_examples(rng):
    assert np.array_equal(idct2d_preprocess(np.zeros((3, 4))).data, np.zeros((3, 3)))
    x = rng.standard_normal((3, 4))
    assert idct2d_preprocess(x).data[0, 0] == pytest.approx(x[0, 0] / 4, rel=1e-15)


@pytest.mark.parametrize("shape", [(4, 4), (3, 5), (6, 7), (1, 4), (5, 1)])
def test_idct2d_preprocess_matches_unmerged(rng, shape):
    x = rng.standard_normal(shape)
    hs = idct2d_preprocess(x)
    assert hs.logical_dims == shape
    assert_rel(hs.data, naive_idct_pre(x))


def test_idct_2d_examples(rng):
    c = 3.7
    assert idct_2d(dct_2d([[c]]))[0, 0] == pytest.approx(c / 4)
    assert np.array_equal(idct_2d(np.zeros((3, 5))), np.zeros((3, 5)))
    x = rng.standard_normal((8, 8))
    # the constant first, from the composed 1D oracles
    assert_rel(idct_oracle_nd(dct_oracle_nd(x).values).values, 16 * x)
    assert_rel(idct_2d(dct_2d(x)), 16 * x)


@given(st.integers(1, 24), st.integers(1, 24), st.integers(0, 2**31))
def test_round_trip(n1, n2, seed):
    x = np.random.default_rng(seed).standard_normal((n1, n2))
    assert_rel(idct_2d(dct_2d(x)), n1 * n2 / 4 * x)


@given(st.integers(1, 20), st.integers(1, 20), st.integers(0, 2**31))
def test_separable_composition(n1, n2, seed):
    x = np.random.default_rng(seed).standard_normal((n1, n2))
    rows = np.array([dct_1d(r) for r in x])
    assert_rel(dct_2d(x), np.array([dct_1d(c) for c in rows.T]).T)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**31))
def test_linearity(n1, n2, seed):
    r = np.random.default_rng(seed)
    x, y = r.standard_normal((2, n1, n2))
    a, b = r.standard_normal(2)
    assert_rel(dct_2d(a * x + b * y), a * dct_2d(x) + b * dct_2d(y), 1e-12 * 100)


def test_rowcol_examples(rng):
    assert np.allclose(dct_2d_rowcol(np.ones((2, 2))), [[4, 0], [0, 0]], atol=1e-15)
    x = rng.standard_normal((4, 4))
    assert_rel(dct_2d_rowcol(x), dct_2d(x))


# --- orientation -------------------------------------------------------------------------


def test_transpose_strategy():
    assert maybe_transpose_strategy(100, 10000) is Orientation.DIRECT
    assert maybe_transpose_strategy(10000, 100) is Orientation.TRANSPOSED
    assert maybe_transpose_strategy(512, 512) is Orientation.DIRECT
    assert maybe_transpose_strategy(300, 100) is Orientation.DIRECT


@pytest.mark.parametrize("shape", [(40, 6), (9, 2), (6, 40), (7, 7), (33, 8)])
def test_orientations_agree(rng, shape):
    x = rng.standard_normal(shape)
    for fn in (dct_2d, idct_2d):
        d = fn(x, orientation=Orientation.DIRECT)
        t = fn(x, orientation=Orientation.TRANSPOSED)
        assert_rel(d, t, 1e-12)


# --- counters ---------------------------------------------------------------------------


@pytest.mark.parametrize("shape", [(8, 8), (7, 5), (6, 9), (1, 1), (2, 2), (1, 7), (9, 1), (16, 12)])
def test_single_touch(rng, shape):
    n1, n2 = shape
    x = rng.standard_normal(shape)
    direct, transposed = StageCounters(), StageCounters()
    dct_2d(x, orientation=Orientation.DIRECT, counters=direct)
    dct_2d(x, orientation=Orientation.TRANSPOSED, counters=transposed)
    post = direct.stage("postprocess").tally
    assert (post.reads, post.writes) == (n1 * (n2 // 2 + 1), n1 * n2)
    # transposed runs one-sided along the other axis
    post = transposed.stage("postprocess").tally
    assert (post.reads, post.writes) == (n2 * (n1 // 2 + 1), n1 * n2)


def test_single_touch_direct_call(rng):
    tally = Tally()
    plan = get_plan_2d(6, 5)
    dct2d_postprocess_fused(rfft_2d(rng.standard_normal((6, 5))), plan, tally=tally)
    assert (tally.reads, tally.writes) == (6 * 3, 30)


def test_interior_arithmetic_8x8(rng):
    counters = StageCounters()
    dct_2d(rng.standard_normal((8, 8)), counters=counters)
    items, mults, adds = counters.stage("postprocess").tally.items["interior"]
    # interior rows 1..3, columns 1..3
    assert items == 9
    assert (mults / items, adds / items) == (16, 12)


def test_odd_dims_boundary_items_write_two(rng):
    counters = StageCounters()
    dct_2d(rng.standard_normal((7, 5)), counters=counters)
    items = counters.stage("postprocess").tally.items
    # odd sizes: no N/2 row or column, so edges are row 0 and column 0 only
    assert items["edge-col"][0] == 3  # rows 1..3 x column 0, two outputs each
    assert items["edge-row"][0] == 2  # row 0 x columns 1..2, two outputs each
    assert items["corner"][0] == 1
    assert 4 * items["interior"][0] + 2 * (3 + 2) + 1 == 35


@pytest.mark.parametrize("shape", [(1, 1), (3, 8), (8, 8), (5, 12)])
def test_stage_counts(rng, shape):
    x = rng.standard_normal(shape)
    fused, rowcol, ifused, irowcol = (StageCounters() for _ in range(4))
    dct_2d(x, counters=fused)
    dct_2d_rowcol(x, counters=rowcol)
    idct_2d(x, counters=ifused)
    idct_2d_rowcol(x, counters=irowcol)
    assert [c.full_tensor_stages for c in (fused, rowcol, ifused, irowcol)] == [3, 8, 3, 8]


# --- plans --------------------------------------------------------------------------------


def test_plan_invariants():
    plan = get_plan_2d(5, 12)
    assert plan.twiddle_a.shape == (5,) and plan.twiddle_b.shape == (12,)
    assert np.allclose(np.abs(plan.twiddle_a), 1, atol=1e-12)
    assert np.allclose(np.abs(plan.twiddle_b), 1, atol=1e-12)
    with pytest.raises(PlanError):
        get_plan_2d(0, 3)
    with pytest.raises(PlanError):
        dataclasses.replace(plan, twiddle_a=plan.twiddle_a[:3])


def test_plan_mismatch():
    with pytest.raises(ShapeError):
        dct_2d(np.zeros((4, 5)), get_plan_2d(5, 4))
    with pytest.raises(ShapeError):
        idct_2d(np.zeros((4, 5)), get_plan_2d(4, 4))


def test_corrupted_twiddle_detected(rng):
    plan = get_plan_2d(6, 6)
    bad = dataclasses.replace(plan, twiddle_b=np.conj(plan.twiddle_b))
    x = rng.standard_normal((6, 6))
    assert np.abs(dct_2d(x, bad) - dct_oracle_2d(x).values).max() > 1e-3


@pytest.mark.parametrize("degree", [2, 4, 8])
def test_deterministic_across_degrees(rng, degree):
    x = rng.standard_normal((64, 48))
    base = ExecConfig(1, chunk_size=128)
    cfg = ExecConfig(degree, chunk_size=128)
    assert np.array_equal(dct_2d(x, config=base), dct_2d(x, config=cfg))
    assert np.array_equal(idct_2d(x, config=base), idct_2d(x, config=cfg))
