"""Self-check suites run by ``sdct verify``.

Each suite compares a fast path with a brute-force reference on fixed-seed
inputs, so two runs produce identical reports. ``plan_2d`` lets a test harness
substitute a deliberately corrupted plan and confirm the suites notice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dct1d import Algorithm, dct_1d, idct_1d
from .dct2d import Plan2d, dct_2d, dct_2d_rowcol, get_plan_2d, idct_2d
from .executor import ExecConfig, StageCounters
from .ext import dct_3d, idct_3d, idct_idxst_2d, idct_idxst_2d_rowcol, idxst_1d, idxst_idct_2d, idxst_idct_2d_rowcol
from .fft import dft_naive, half_length, rfftn
from .oracle import dct_oracle_1d, dct_oracle_2d, idct_oracle_1d, idct_oracle_nd, idxst_oracle_1d

TOL = 1e-10

PlanFactory = Callable[[int, int], Plan2d]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def rel_err(got, want) -> float:
    got, want = np.asarray(got), np.asarray(want)
    return float(np.max(np.abs(got - want), initial=0.0) / max(np.max(np.abs(want), initial=0.0), 1e-12))


def _rng(tag: int) -> np.random.Generator:
    return np.random.default_rng(1000 + tag)


def _worst(pairs) -> float:
    return max((rel_err(g, w) for g, w in pairs), default=0.0)


def suite_oracle_1d(plan_2d: PlanFactory) -> SuiteResult:
    rng = _rng(1)
    pairs = []
    for n in [*range(1, 18), 32, 100, 101]:
        x = rng.standard_normal(n)
        ref = dct_oracle_1d(x).values
        pairs += [(dct_1d(x, alg), ref) for alg in Algorithm]
        pairs.append((idct_1d(x), idct_oracle_1d(x).values))
    err = _worst(pairs)
    return SuiteResult("oracle-1d", err <= TOL, f"max rel err {err:.2e}")


def suite_postprocess_2d(plan_2d: PlanFactory) -> SuiteResult:
    rng = _rng(2)
    pairs = []
    for shape in [(1, 1), (2, 3), (4, 4), (5, 7), (6, 6), (8, 5)]:
        x = rng.standard_normal(shape)
        ref = dct_oracle_2d(x).values
        pairs.append((dct_2d(x, plan_2d(*shape)), ref))
        pairs.append((dct_2d_rowcol(x), ref))
        pairs.append((idct_2d(x, plan_2d(*shape)), idct_oracle_nd(x).values))
    err = _worst(pairs)
    return SuiteResult("postprocess-2d", err <= TOL, f"max rel err {err:.2e}")


def suite_roundtrip(plan_2d: PlanFactory) -> SuiteResult:
    rng = _rng(3)
    x1, x2, x3 = rng.standard_normal(12), rng.standard_normal((6, 9)), rng.standard_normal((3, 4, 5))
    p = plan_2d(*x2.shape)
    err = _worst([
        (idct_1d(dct_1d(x1)), 6 * x1),
        (idct_2d(dct_2d(x2, p), p), 6 * 9 / 4 * x2),
        (idct_3d(dct_3d(x3)), 3 * 4 * 5 / 8 * x3),
    ])
    return SuiteResult("roundtrip", err <= TOL, f"max rel err {err:.2e}")


def suite_hermitian(plan_2d: PlanFactory) -> SuiteResult:
    rng = _rng(4)
    pairs = []
    for n in [*range(1, 18), 100]:
        x = rng.standard_normal(n)
        pairs.append((rfftn(x).full(), dft_naive(x)))
    err = _worst(pairs)
    return SuiteResult("hermitian", err <= TOL, f"max rel err {err:.2e}")


def suite_idxst(plan_2d: PlanFactory) -> SuiteResult:
    rng = _rng(5)
    pairs = [(idxst_1d(x), idxst_oracle_1d(x).values) for x in (rng.standard_normal(n) for n in range(1, 13))]
    for shape in [(1, 1), (3, 5), (8, 8), (7, 4)]:
        x = rng.standard_normal(shape)
        p = plan_2d(*shape)
        pairs.append((idct_idxst_2d(x, p), idct_idxst_2d_rowcol(x)))
        pairs.append((idxst_idct_2d(x, p), idxst_idct_2d_rowcol(x)))
    err = _worst(pairs)
    return SuiteResult("idxst", err <= TOL, f"max rel err {err:.2e}")


def suite_counters(plan_2d: PlanFactory) -> SuiteResult:
    problems = []
    for shape in [(8, 8), (7, 5), (6, 9)]:
        x = _rng(6).standard_normal(shape)
        fused, rowcol = StageCounters(), StageCounters()
        dct_2d(x, plan_2d(*shape), counters=fused)
        dct_2d_rowcol(x, counters=rowcol)
        if (fused.full_tensor_stages, rowcol.full_tensor_stages) != (3, 8):
            problems.append(f"{shape}: stages {fused.full_tensor_stages} vs {rowcol.full_tensor_stages}")
        post = fused.stage("postprocess").tally
        n1, n2 = shape
        if (post.reads, post.writes) != (n1 * half_length(n2), n1 * n2):
            problems.append(f"{shape}: post reads/writes {post.reads}/{post.writes}")
        if shape == (8, 8):
            items, mults, adds = post.items["interior"]
            if (mults, adds) != (16 * items, 12 * items):
                problems.append(f"interior ops {mults / items}/{adds / items} per item")
    return SuiteResult("counters", not problems, "; ".join(problems) or "3 vs 8 stages, single touch, 16/12")


def suite_determinism(plan_2d: PlanFactory) -> SuiteResult:
    x = _rng(7).standard_normal((48, 40))
    p = plan_2d(*x.shape)
    outs = [dct_2d(x, p, config=ExecConfig(d, 64)) for d in (1, 2, 4, 8)]
    same = all(np.array_equal(outs[0], o) for o in outs[1:])
    return SuiteResult("determinism", same, "bitwise equal across degrees 1,2,4,8" if same else "outputs differ")


SUITES = [suite_oracle_1d, suite_postprocess_2d, suite_roundtrip, suite_hermitian,
          suite_idxst, suite_counters, suite_determinism]


def run_verify(plan_2d: PlanFactory = get_plan_2d) -> list[SuiteResult]:
    results = []
    for suite in SUITES:
        try:
            results.append(suite(plan_2d))
        except Exception as exc:  # a crash is a failure of that suite, not of the runner
            results.append(SuiteResult(suite.__name__.removeprefix("suite_").replace("_", "-"), False,
                                       f"{type(exc).__name__}: {exc}"))
    return results


def format_report(results: list[SuiteResult]) -> str:
    return "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<15} {r.detail}" for r in results)
