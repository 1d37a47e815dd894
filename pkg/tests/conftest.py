import contextlib

import numpy as np
import pytest

from cgkit import Objective

_ACCEPTANCE = []


def quadratic(diag, name="quad"):
    """``0.5 x' diag(q) x``; the Lipschitz constant of the gradient is ``max(q)``."""
    q = np.asarray(diag, dtype=float)
    return Objective(name, q.size, lambda x: 0.5 * float(x @ (q * x)), lambda x: q * x)


def square():
    return Objective("square", 1, lambda x: float(x[0] ** 2), lambda x: np.array([2.0 * x[0]]))


def half_square():
    return Objective("half-square", 1, lambda x: 0.5 * float(x[0] ** 2), lambda x: x.copy())


def bound_slack(g, state):
    """Absolute slack for the beta upper-bound checks.

    The compared quantities are differences of inner products, so their
    rounding error scales with the operand magnitudes divided by ``d'y``.
    """
    # rounding scale of the compared quantities: operand magnitudes over d'y
    y = g - state.g_prev
    dty = state.d_prev @ y
    mags = abs(g @ g) + abs(g @ state.g_prev) + abs(g @ y)
    mags += abs(g @ state.s_prev) * np.linalg.norm(state.s_prev) / (state.alpha_prev * np.linalg.norm(y))
    return 1e-12 * max(1.0, mags / abs(dty))


@pytest.fixture
def criterion():
    """Context manager that records a PASS/FAIL line for the acceptance summary.

    Use as ``with criterion("C1 heat") as note: ...``; ``note(text)`` attaches
    a short detail string. Failures are recorded and re-raised.
    """

    @contextlib.contextmanager
    def run(label):
        details = []
        try:
            yield details.append
        except BaseException:
            _ACCEPTANCE.append((label, False, "; ".join(details)))
            raise
        _ACCEPTANCE.append((label, True, "; ".join(details)))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
