import dataclasses

import numpy as np

from sdct.dct2d import get_plan_2d
from sdct.verify import format_report, run_verify


def test_fresh_build_passes():
    results = run_verify()
    assert all(r.passed for r in results), format_report(results)


def test_reports_are_deterministic():
    assert format_report(run_verify()) == format_report(run_verify())


def test_twiddle_sign_mutation_fails_postprocess_suite():
    def corrupted(n1, n2):
        plan = get_plan_2d(n1, n2)
        return dataclasses.replace(plan, twiddle_b=np.conj(plan.twiddle_b))

    failed = {r.name for r in run_verify(corrupted) if not r.passed}
    assert "postprocess-2d" in failed
