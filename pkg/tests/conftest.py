import hypothesis
import numpy as np
import pytest

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=8, deadline=None)
hypothesis.settings.load_profile("default")

TOL = 1e-10


def rel_err(got, want) -> float:
    got, want = np.asarray(got), np.asarray(want)
    scale = max(float(np.max(np.abs(want), initial=0.0)), 1e-12)
    return float(np.max(np.abs(got - want), initial=0.0)) / scale


def assert_rel(got, want, tol=TOL):
    err = rel_err(got, want)
    assert err <= tol, f"relative error {err:.3e} > {tol:.0e}"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """``criterion(num, title, fn)`` runs ``fn() -> (ok, detail)`` and logs one PASS/FAIL line."""
    lines = request.config.stash[_ACCEPTANCE]

    def run(num, title, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash counts as a failed criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        line = f"AC{num:>2} {'PASS' if ok else 'FAIL'}  {title} ({detail})"
        lines.append(line)
        print(line)
        assert ok, line

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
